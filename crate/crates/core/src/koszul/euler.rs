use serde::Serialize;

use super::data::KoszulData;
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::graded::{resolve, GradedModule};

/// Residuals of the Euler-characteristic identity
/// `χ(a(k)) = Σ_m (-1)^m χ(L^{k-m}) χ(R_m ⊗ a)`, one per `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerVerdict {
    /// `(k, lhs, rhs)`.
    pub rows: Vec<(i64, i128, i128)>,
}

impl EulerVerdict {
    pub fn residuals(&self) -> Vec<(i64, i128)> {
        self.rows.iter().map(|&(k, a, b)| (k, a - b)).collect()
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|&(_, a, b)| a == b)
    }
}

/// `C(s + n, n)` as a polynomial in `s`, evaluated at any integer.
fn binomial_poly(s: i64, n: usize) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for j in 1..=n as i128 {
        num *= s as i128 + j;
        den *= j;
    }
    num / den
}

/// `χ(M~(t))` on `P^n` from the twists of a free resolution of `M`.
pub fn euler_from_resolution(res: &FreeComplex, n: usize, t: i64) -> i128 {
    let mut total = 0;
    for i in res.indices() {
        let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        for g in res.twists(i) {
            total += sign * binomial_poly(t - g, n);
        }
    }
    total
}

/// Checks the Euler-characteristic shadow of `a ≅ p_{1*}(e ⊗ p_2^* a)`
/// for every `k` in `lo..=hi`. Needs a standard-graded polynomial model
/// and `B_m` computed until it vanishes, so that the sum is finite.
pub fn euler_kernel_check(
    k: &KoszulData,
    m: &GradedModule,
    lo: i64,
    hi: i64,
) -> Result<EulerVerdict> {
    let a = k.algebra();
    let ring = a.base().ring();
    if !ring.weights().is_standard() {
        return Err(Error::Unsupported(
            "Euler characteristics are computed on the standard-graded model".into(),
        ));
    }
    if m.ring() != ring {
        return Err(Error::DimensionMismatch(
            "module over a different ring".into(),
        ));
    }
    if !k.is_complete() {
        return Err(Error::BoundExhausted {
            degree: k.m_max() as i64 + 1,
            message: format!(
                "B_m does not vanish by m = {}; the sum over m does not truncate",
                k.m_max()
            ),
        });
    }
    let n = ring.nvars() - 1;
    let d = a.step();
    let res_m = resolve(m)?;
    let res_a = resolve(&GradedModule::free_of_degrees(a.base(), &[0]))?;
    let chi_m = |t: i64| euler_from_resolution(&res_m, n, d * t);
    let chi_l = |t: i64| euler_from_resolution(&res_a, n, d * t);
    let top = k.m_max() as i64;
    // χ(R_m ⊗ a) from 0 → R_m → B_m ⊗ O → … → L^m → 0
    let mut chi_r = Vec::new();
    for mm in 0..=top {
        let mut s = 0;
        for j in 0..=mm {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            s += sign * k.b_dim(mm - j)? as i128 * chi_m(j);
        }
        chi_r.push(s);
    }
    let rows = (lo..=hi)
        .map(|kk| {
            let rhs: i128 = (0..=top)
                .map(|mm| {
                    let sign = if mm % 2 == 0 { 1 } else { -1 };
                    sign * chi_l(kk - mm) * chi_r[mm as usize]
                })
                .sum();
            (kk, chi_m(kk), rhs)
        })
        .collect();
    Ok(EulerVerdict { rows })
}
