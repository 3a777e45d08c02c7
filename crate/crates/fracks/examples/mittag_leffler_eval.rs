//! Mittag-Leffler function evaluation: the series E_alpha(u), its
//! exponential limit at alpha = 1, and the two-term truncation used by
//! the fractional orbital.
//!
//! ```bash
//! cargo run --example mittag_leffler_eval
//! ```

use num_complex::Complex64;

use fracks::{mittag_leffler, mittag_leffler_trunc2, FracOrder};

fn main() {
    println!("E_alpha(x) on the real axis:");
    println!("{:>6} {:>14} {:>14} {:>14}", "x", "alpha=0.3", "alpha=0.5", "alpha=1 (=e^x)");
    for k in 0..=6 {
        let x = -1.0 + k as f64 * 0.5;
        let row: Vec<f64> = [0.3, 0.5, 1.0]
            .iter()
            .map(|&a| {
                let order = FracOrder::new(a).expect("valid order");
                mittag_leffler(order, Complex64::new(x, 0.0)).expect("series").re
            })
            .collect();
        println!("{x:>6.2} {:>14.8} {:>14.8} {:>14.8}", row[0], row[1], row[2]);
    }

    let order = FracOrder::new(0.5).expect("valid order");
    let on_axis = mittag_leffler(order, Complex64::new(0.0, 1.0)).expect("series");
    println!();
    println!("imaginary argument (the orbital case): E_0.5(i) = {:.8} + {:.8}i", on_axis.re, on_axis.im);

    println!();
    println!("two-term truncation 1 + i theta / Gamma(1 + alpha) vs the full series at alpha = 0.3:");
    println!("{:>8} {:>24} {:>24} {:>10}", "theta", "full", "truncated", "|diff|");
    for theta in [0.01, 0.05, 0.1, 0.5, 1.0] {
        let full = mittag_leffler(FracOrder::new(0.3).unwrap(), Complex64::new(0.0, theta))
            .expect("series");
        let trunc = mittag_leffler_trunc2(FracOrder::new(0.3).unwrap(), theta);
        println!(
            "{theta:>8.3} {:>11.6}+{:.6}i {:>11.6}+{:.6}i {:>10.2e}",
            full.re,
            full.im,
            trunc.re,
            trunc.im,
            (full - trunc).norm()
        );
    }
    println!();
    println!("the truncation error grows as theta^2 / Gamma(1 + 2 alpha).");
}
