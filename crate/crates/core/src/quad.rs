// Copyright 2026 The floquet-lindblad Authors
// SPDX-License-Identifier: Apache-2.0

//! Adaptive Gauss–Kronrod (7/15) quadrature for matrix-valued integrands.

use crate::error::{Error, Result};
use crate::linalg::{max_abs, ComplexMatrix};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];
/// Gauss weights for the odd-indexed Kronrod nodes and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_SEGMENTS: usize = 4000;

/// Absolute tolerance used by default for antiderivatives.
pub const DEFAULT_TOL: f64 = 1e-12;

struct Segment {
    a: f64,
    b: f64,
    value: ComplexMatrix,
    error: f64,
}

fn kronrod<F>(f: &F, a: f64, b: f64) -> Segment
where
    F: Fn(f64) -> ComplexMatrix + ?Sized,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kron = fc.scale(WGK[7]);
    let mut gauss = fc.scale(WG[3]);
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(centre - dx) + f(centre + dx);
        kron += sum.scale(WGK[j]);
        if j % 2 == 1 {
            gauss += sum.scale(WG[j / 2]);
        }
    }
    let error = max_abs(&(&kron - &gauss)) * half.abs();
    Segment {
        a,
        b,
        value: kron.scale(half),
        error,
    }
}

/// `∫_a^b f` split at every breakpoint inside `(a, b)`, to absolute
/// max-entry accuracy `tol`.
pub fn integrate_matrix<F>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<ComplexMatrix>
where
    F: Fn(f64) -> ComplexMatrix + ?Sized,
{
    if a == b {
        let probe = f(a);
        return Ok(ComplexMatrix::zeros(probe.nrows(), probe.ncols()));
    }
    if b < a {
        return integrate_matrix(f, b, a, breakpoints, tol).map(|m| -m);
    }
    let mut cuts = vec![a];
    let mut inner: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&t| t > a && t < b)
        .collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    cuts.extend(inner);
    cuts.push(b);

    let mut segs: Vec<Segment> = cuts.windows(2).map(|w| kronrod(f, w[0], w[1])).collect();
    loop {
        let total: f64 = segs.iter().map(|s| s.error).sum();
        if total <= tol {
            break;
        }
        if segs.len() >= MAX_SEGMENTS {
            return Err(Error::QuadratureAccuracy {
                achieved: total,
                target: tol,
            });
        }
        let (worst, _) = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .expect("at least one segment");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            let total: f64 = segs.iter().map(|s| s.error).sum::<f64>() + s.error;
            return Err(Error::QuadratureAccuracy {
                achieved: total,
                target: tol,
            });
        }
        segs.push(kronrod(f, s.a, mid));
        segs.push(kronrod(f, mid, s.b));
    }
    // Sum in time order for reproducibility.
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut acc = ComplexMatrix::zeros(segs[0].value.nrows(), segs[0].value.ncols());
    for s in &segs {
        acc += &s.value;
    }
    Ok(acc)
}

/// Scalar convenience wrapper around [`integrate_matrix`].
pub fn integrate<F>(f: &F, a: f64, b: f64, breakpoints: &[f64], tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let g = |t: f64| ComplexMatrix::from_element(1, 1, crate::linalg::c(f(t)));
    Ok(integrate_matrix(&g, a, b, breakpoints, tol)?[(0, 0)].re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let v = integrate(&|t: f64| t.powi(9) - 3.0 * t * t, 0.0, 2.0, &[], 1e-13).unwrap();
        assert!((v - (1024.0 / 10.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn periodic_cosine() {
        let t_per = 2.0 * PI;
        let f = |t: f64| 1.0 + (2.0 * PI * t / t_per).cos();
        for &t in &[0.3, 1.7, 5.0, 9.1] {
            let v = integrate(&f, 0.0, t, &[], 1e-13).unwrap();
            let want = t + t_per / (2.0 * PI) * (2.0 * PI * t / t_per).sin();
            assert!((v - want).abs() < 1e-12);
        }
    }

    #[test]
    fn kink_handled_by_breakpoint() {
        let f = |t: f64| (t - 0.3).abs();
        let v = integrate(&f, 0.0, 1.0, &[0.3], 1e-13).unwrap();
        assert!((v - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn reversed_limits_negate() {
        let f = |t: f64| t.exp();
        let a = integrate(&f, 0.0, 1.0, &[], 1e-13).unwrap();
        let b = integrate(&f, 1.0, 0.0, &[], 1e-13).unwrap();
        assert!((a + b).abs() < 1e-15 && (a - (1f64.exp() - 1.0)).abs() < 1e-13);
    }
}
