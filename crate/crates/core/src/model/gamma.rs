//! Complex Gamma function (Lanczos approximation, g = 7, nine coefficients).

use std::f64::consts::PI;

use crate::{Error, Result, C64};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `Γ(z)`; reflection is used for `Re z < 1/2`.
pub fn gamma_fn(z: C64) -> Result<C64> {
    let nearest = z.re.round();
    if nearest <= 0.0 && (z - nearest).norm() < 1e-12 {
        return Err(Error::GammaPole(nearest));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        return Ok(PI / (s * gamma_fn(1.0 - z)?));
    }
    let z = z - 1.0;
    let mut acc = C64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * ((z + 0.5) * t.ln() - t).exp() * acc)
}
