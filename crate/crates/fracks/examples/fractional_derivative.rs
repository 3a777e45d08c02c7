//! Modified Riemann-Liouville derivative by product-integration quadrature,
//! checked against the closed-form power rule
//! Gamma(g+1)/Gamma(g+1-a) x^{g-a}.
//!
//! ```bash
//! cargo run --example fractional_derivative
//! ```

use fracks::{frac_power_rule, rl_frac_derivative, FracOrder, SampledFunction};

fn main() {
    let h = 1.0 / 1024.0;
    let len = (2.0 / h) as usize + 1;

    println!("D^a x^g on [0, 2], h = 1/1024, sampled at x = 1:");
    println!("{:>6} {:>6} {:>14} {:>14} {:>10}", "g", "a", "numeric", "closed form", "rel err");
    for gamma_exp in [0.5, 1.0, 2.0] {
        for alpha in [0.3, 0.5, 0.7] {
            let order = FracOrder::new(alpha).expect("valid order");
            let f = SampledFunction::from_fn(0.0, h, len, |x| x.powf(gamma_exp))
                .expect("sampled function");
            let d = rl_frac_derivative(&f, order).expect("derivative");
            let numeric = d.at(1.0);
            let exact = frac_power_rule(gamma_exp, order, 1.0).expect("closed form");
            println!(
                "{gamma_exp:>6.1} {alpha:>6.1} {numeric:>14.8} {exact:>14.8} {:>10.2e}",
                ((numeric - exact) / exact).abs()
            );
        }
    }

    let flat = SampledFunction::from_fn(0.0, h, len, |_| 7.25).expect("sampled function");
    let d = rl_frac_derivative(&flat, FracOrder::new(0.5).unwrap()).expect("derivative");
    let worst = d.ys.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    println!();
    println!("constants differentiate to zero: max |D^0.5 c| = {worst:.2e}");

    println!();
    println!("convergence under grid halving (g = 2, a = 0.3, worst on [0.25, 2]):");
    for h in [1.0 / 256.0, 1.0 / 512.0, 1.0 / 1024.0] {
        let len = (2.0 / h) as usize + 1;
        let order = FracOrder::new(0.3).unwrap();
        let f = SampledFunction::from_fn(0.0, h, len, |x| x * x).expect("sampled function");
        let d = rl_frac_derivative(&f, order).expect("derivative");
        let mut worst: f64 = 0.0;
        for (i, &x) in f.xs.iter().enumerate() {
            if (0.25..=2.0).contains(&x) {
                let exact = frac_power_rule(2.0, order, x).expect("closed form");
                worst = worst.max(((d.ys[i] - exact) / exact).abs());
            }
        }
        println!("  h = 1/{:>5}: {worst:.3e}", (1.0 / h) as usize);
    }
}
