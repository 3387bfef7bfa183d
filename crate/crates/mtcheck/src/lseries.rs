//! The L-series side: Fourier coefficients a_n, values of f on the upper
//! half-plane, Fricke/Atkin-Lehner eigenvalues, L(E, 1), twisted L-values at
//! s = 1, and direct numerical evaluation of lambda_f(a/m) along
//! Gamma_0(N)-transformed contours.

use crate::arith::{factor, gcd_i64, mod_inv};
use crate::characters::DirichletChar;
use crate::curve::{compute_ap, CurveData};
use crate::numeric::{exp, exp_2pi_i, pi, MpComplex, MpFloat};
use crate::{Error, Result};
use std::path::Path;

/// Fourier coefficients a_1..a_n of the newform attached to the curve,
/// filled in by multiplicativity from prime point counts.
pub fn an_table(curve: &CurveData, nmax: usize, cache_dir: Option<&Path>) -> Vec<i64> {
    if let Some(dir) = cache_dir {
        if let Ok(v) = read_an_cache(curve, dir) {
            if v.len() > nmax {
                return v;
            }
        }
    }
    let v = an_table_fresh(curve, nmax);
    if let Some(dir) = cache_dir {
        let _ = write_an_cache(curve, dir, &v);
    }
    v
}

fn an_table_fresh(curve: &CurveData, nmax: usize) -> Vec<i64> {
    let mut a = vec![0i64; nmax + 1];
    if nmax == 0 {
        return a;
    }
    a[1] = 1;
    let mut ap_at = std::collections::BTreeMap::new();
    for n in 2..=nmax {
        let p = factor(n as i64)[0].0;
        let one_n = curve.one_n(p);
        let ap = *ap_at
            .entry(p)
            .or_insert_with(|| compute_ap(curve, p).expect("a_p computable (bad 2/3 need overrides)"));
        let mut pk = p;
        let mut m = n as i64 / p;
        while m % p == 0 {
            pk *= p;
            m /= p;
        }
        if m > 1 {
            a[n] = a[pk as usize] * a[m as usize];
        } else if n as i64 == p {
            a[n] = ap;
        } else {
            // prime power p^k, k >= 2: a_{p^k} = a_p a_{p^{k-1}} - 1_N(p) p a_{p^{k-2}}
            let prev = a[(n as i64 / p) as usize];
            let prev2 = a[(n as i64 / p / p) as usize];
            a[n] = ap * prev - one_n * p * prev2;
        }
    }
    a
}

fn an_cache_path(curve: &CurveData, dir: &Path) -> std::path::PathBuf {
    dir.join(format!("{}.an.txt", curve.label))
}

pub fn read_an_cache(curve: &CurveData, dir: &Path) -> Result<Vec<i64>> {
    let text = std::fs::read_to_string(an_cache_path(curve, dir))
        .map_err(|e| Error::CacheCorrupt(format!("read: {e}")))?;
    let mut v = vec![0i64];
    for line in text.lines() {
        let mut it = line.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CacheCorrupt("bad index".into()))?;
        let an: i64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::CacheCorrupt("bad value".into()))?;
        if n != v.len() {
            return Err(Error::CacheCorrupt(format!("gap at n = {n}")));
        }
        v.push(an);
    }
    Ok(v)
}

pub fn write_an_cache(curve: &CurveData, dir: &Path, a: &[i64]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let mut out = String::new();
    for (n, an) in a.iter().enumerate().skip(1) {
        out.push_str(&format!("{n} {an}\n"));
    }
    std::fs::write(an_cache_path(curve, dir), out)
}

/// Verify a cached table: dense recompute of a prefix plus a random
/// multiplicativity sample on the rest.
pub fn verify_an_cache(curve: &CurveData, dir: &Path) -> Result<usize> {
    let cached = read_an_cache(curve, dir)?;
    if cached.len() < 2 {
        return Err(Error::CacheCorrupt("empty coefficient cache".into()));
    }
    let nmax = cached.len() - 1;
    let fresh = an_table_fresh(curve, nmax.min(512));
    for n in 1..fresh.len() {
        if cached[n] != fresh[n] {
            return Err(Error::CacheCorrupt(format!(
                "a_{n} mismatch: cached {} vs recomputed {}",
                cached[n], fresh[n]
            )));
        }
    }
    let mut checked = fresh.len() - 1;
    let mut state = 0x9e3779b97f4a7c15u64 ^ (nmax as u64);
    for _ in 0..(nmax / 100).max(8) {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let n = 2 + (state >> 33) as usize % (nmax - 1);
        let p = factor(n as i64)[0].0;
        let mut m = n as i64;
        while m % p == 0 {
            m /= p;
        }
        let pk = n as i64 / m;
        if m > 1 && cached[n] != cached[pk as usize] * cached[m as usize] {
            return Err(Error::CacheCorrupt(format!("multiplicativity fails at n = {n}")));
        }
        checked += 1;
    }
    Ok(checked)
}

/// sum_{n >= 1} (a_n / n) e^{2 pi i n z}; Im z must be positive. Also
/// returns a bound dominating the truncation error.
pub fn tail_integral(a: &[i64], z: &MpComplex, bits: u32) -> (MpComplex, f64) {
    let q = exp_2pi_i(z);
    sum_with_coeffs(a, &q, bits, true)
}

/// f(z) = sum a_n e^{2 pi i n z} with its truncation bound.
pub fn eval_f(a: &[i64], z: &MpComplex, bits: u32) -> (MpComplex, f64) {
    let q = exp_2pi_i(z);
    sum_with_coeffs(a, &q, bits, false)
}

fn sum_with_coeffs(a: &[i64], q: &MpComplex, bits: u32, over_n: bool) -> (MpComplex, f64) {
    let absq = q.abs().to_f64();
    assert!(absq < 1.0, "require Im z > 0");
    let mut sum = MpComplex::zero(bits);
    let mut qn = MpComplex::real(MpFloat::from_i64(1, bits));
    let target = 2f64.powi(-((bits as i32) - 8));
    // |a_m| <= m^{3/2}; with the 1/m the tail terms are <= m^{1/2} |q|^m
    // (<= m^{3/2} |q|^m without), so sum_{m>n} <= lead/(1 - r) once r < 1.
    let expo = if over_n { 0.5 } else { 1.5 };
    let mut n = 0usize;
    loop {
        n += 1;
        qn = qn.mul(q);
        if n < a.len() && a[n] != 0 {
            let c = if over_n {
                MpFloat::from_i64(a[n], bits).div_i64(n as i64)
            } else {
                MpFloat::from_i64(a[n], bits)
            };
            sum = sum.add(&qn.mul_f(&c));
        }
        let r = absq * (1.0 + 1.0 / n as f64).powf(expo);
        let bound = ((n + 1) as f64).powf(expo) * absq.powf(n as f64 + 1.0)
            / (1.0 - r).max(1e-300);
        if r < 1.0 && bound < target {
            return (sum, bound);
        }
        if n + 1 >= a.len() {
            return (sum, bound);
        }
    }
}

/// Fricke eigenvalue w with (f | W_N)(z) = w f(z); w = +-1.
pub fn fricke_eigenvalue(curve: &CurveData, a: &[i64], bits: u32) -> Result<i64> {
    let n = curve.conductor;
    let sqrt_n = MpFloat::from_i64(n, bits).sqrt();
    // z = i t / sqrt(N): both z and W z = i/(t sqrt N) stay high.
    let t = MpFloat::from_rational(&crate::arith::rat(119, 100), bits);
    let y = t.div(&sqrt_n);
    let z = MpComplex { re: MpFloat::zero(bits), im: y.clone() };
    let wz = MpComplex {
        re: MpFloat::zero(bits),
        im: MpFloat::from_i64(1, bits).div(&t.mul(&sqrt_n)),
    };
    let (fz, b1) = eval_f(a, &z, bits);
    let (fwz, b2) = eval_f(a, &wz, bits);
    if b1 > 1e-10 || b2 > 1e-10 {
        return Err(Error::PrecisionUnsupported(
            "fricke eigenvalue: a_n table too short for the series tails".into(),
        ));
    }
    // (f|W)(z) = N (N z)^{-2} f(-1/(Nz)); at z = iy the factor is -1/(N y^2).
    let scale = MpFloat::from_i64(n, bits).mul(&y).mul(&y).neg();
    let lhs = fwz.re.div(&scale);
    let ratio = lhs.div(&fz.re).to_f64();
    if (ratio - 1.0).abs() < 1e-6 {
        Ok(1)
    } else if (ratio + 1.0).abs() < 1e-6 {
        Ok(-1)
    } else {
        Err(Error::ConvergenceFailure(format!(
            "fricke ratio {ratio} not close to +-1 for {}",
            curve.label
        )))
    }
}

/// An Atkin-Lehner matrix (Q x, y; N z, Q w) of determinant Q for Q || N,
/// here with z = w = 1.
fn al_matrix(q: i64, n: i64) -> [i64; 4] {
    assert!(q > 0 && n % q == 0 && gcd_i64(q, n / q) == 1);
    if q == n {
        return [0, -1, n, 0];
    }
    let r = n / q;
    // Need det = Q^2 x - N y = Q, i.e. Q x - r y = 1.
    let (g, x, yneg) = crate::arith::ext_gcd(q, r);
    debug_assert_eq!(g, 1);
    let y = -yneg;
    debug_assert_eq!(q * q * x - n * y, q);
    [q * x, y, n, q]
}

fn moebius_apply(mat: &[i64; 4], z: &MpComplex) -> MpComplex {
    let bits = z.bits();
    let num = z
        .mul_f(&MpFloat::from_i64(mat[0], bits))
        .add(&MpComplex::real(MpFloat::from_i64(mat[1], bits)));
    let den = z
        .mul_f(&MpFloat::from_i64(mat[2], bits))
        .add(&MpComplex::real(MpFloat::from_i64(mat[3], bits)));
    num.div(&den)
}

fn moebius_apply_cusp(mat: &[i64; 4], num: i64, den: i64) -> (i64, i64) {
    let mut p = mat[0] * num + mat[1] * den;
    let mut r = mat[2] * num + mat[3] * den;
    let g = gcd_i64(p, r).max(1);
    p /= g;
    r /= g;
    if r < 0 {
        p = -p;
        r = -r;
    }
    (p, r)
}

/// Pseudo-eigenvalue of the Atkin-Lehner involution W_Q on f: f|W_Q = eps f.
pub fn al_eigenvalue(curve: &CurveData, a: &[i64], q: i64, bits: u32) -> Result<i64> {
    let n = curve.conductor;
    if q == n {
        return fricke_eigenvalue(curve, a, bits);
    }
    let m = al_matrix(q, n);
    // Probe near the isometric circle |N z + Q| = sqrt(Q), where Im z and
    // Im(W_Q z) are both about sqrt(Q)/N.
    let y = MpFloat::from_i64(q, bits).sqrt().div_i64(n);
    for probe in 0..=5i64 {
        let re = crate::arith::rat(-q * 7 + probe, 7 * n);
        let z = MpComplex { re: MpFloat::from_rational(&re, bits), im: y.clone() };
        let mz = moebius_apply(&m, &z);
        if mz.im.to_f64() < 0.6 * y.to_f64() {
            continue;
        }
        let (fz, b1) = eval_f(a, &z, bits);
        let (fmz, b2) = eval_f(a, &mz, bits);
        if b1 > 1e-12 || b2 > 1e-12 {
            continue;
        }
        let j = z
            .mul_f(&MpFloat::from_i64(m[2], bits))
            .add(&MpComplex::real(MpFloat::from_i64(m[3], bits)));
        let lhs = fmz.mul_f(&MpFloat::from_i64(q, bits)).div(&j.mul(&j));
        let ratio = lhs.div(&fz);
        let (re, im) = ratio.to_f64s();
        if im.abs() < 1e-6 {
            if (re - 1.0).abs() < 1e-6 {
                return Ok(1);
            }
            if (re + 1.0).abs() < 1e-6 {
                return Ok(-1);
            }
        }
    }
    Err(Error::ConvergenceFailure(format!(
        "AL eigenvalue at Q = {q} undetermined for {}",
        curve.label
    )))
}

/// L(E, 1) by the rapidly convergent symmetric series
/// (1 - w) sum (a_n/n) e^{-2 pi n / sqrt N}.
pub fn l_value_s1(curve: &CurveData, a: &[i64], bits: u32) -> Result<MpFloat> {
    let w = fricke_eigenvalue(curve, a, bits)?;
    if w == 1 {
        return Ok(MpFloat::zero(bits)); // forced zero by the sign
    }
    let n = curve.conductor;
    let y0 = MpFloat::from_i64(1, bits).div(&MpFloat::from_i64(n, bits).sqrt());
    let z = MpComplex { re: MpFloat::zero(bits), im: y0 };
    let (s, bound) = tail_integral(a, &z, bits);
    if bound > 1e-35 {
        return Err(Error::PrecisionUnsupported(
            "L(E,1) series truncation too coarse; enlarge the a_n table".into(),
        ));
    }
    Ok(s.re.mul_i64(2))
}

/// Twisted value L(E, chi, 1) for chi primitive mod m with gcd(m, N) = 1.
/// The root number of the twisted form is solved numerically from two
/// contour splits and verified on a third, so no normalisation is assumed.
pub fn l_twisted_s1(
    curve: &CurveData,
    a: &[i64],
    chi: &DirichletChar,
    bits: u32,
) -> Result<MpComplex> {
    let m = chi.modulus;
    if m == 1 {
        return Ok(MpComplex::real(l_value_s1(curve, a, bits)?));
    }
    if !chi.is_primitive() {
        return Err(Error::BadInput("l_twisted_s1 needs a primitive character".into()));
    }
    if gcd_i64(m, curve.conductor) != 1 {
        return Err(Error::HypothesisViolated(
            "twisted series requires gcd(cond(chi), N) = 1".into(),
        ));
    }
    let level = curve.conductor * m * m; // level of the twisted form
    let sq = MpFloat::from_i64(level, bits).sqrt();
    let conj = chi.conj();
    // S1(y) = sum (a_n chi(n)/n) e^{-2 pi n y},
    // S2(y) = sum (a_n chi~(n)/n) e^{-2 pi n / (level y)};
    // L = S1(y) - w S2(y) for every y > 0.
    let series = |c: &DirichletChar, y: &MpFloat| -> (MpComplex, f64) {
        let two_pi = pi(bits).mul_i64(2);
        let q0 = exp(&two_pi.mul(y).neg());
        let absq = q0.to_f64();
        let mut qn = MpFloat::from_i64(1, bits);
        let mut sum = MpComplex::zero(bits);
        let target = 2f64.powi(-((bits as i32) - 8));
        let mut n = 0usize;
        loop {
            n += 1;
            qn = qn.mul(&q0);
            if n < a.len() && a[n] != 0 && c.eval_exponent(n as i64).is_some() {
                let coef = MpFloat::from_i64(a[n], bits).div_i64(n as i64).mul(&qn);
                sum = sum.add(&c.eval_numeric(n as i64, bits).mul_f(&coef));
            }
            let r = absq * (1.0 + 1.0 / n as f64).sqrt();
            let bound =
                ((n + 1) as f64).sqrt() * absq.powf(n as f64 + 1.0) / (1.0 - r).max(1e-300);
            if (r < 1.0 && bound < target) || n + 1 >= a.len() {
                return (sum, bound);
            }
        }
    };
    let heights = [(8i64, 10i64), (10, 10), (13, 10)];
    let mut s1 = vec![];
    let mut s2 = vec![];
    for &(num, den) in &heights {
        let y = MpFloat::from_rational(&crate::arith::rat(num, den), bits).div(&sq);
        let (v1, b1) = series(chi, &y);
        let inv_y = MpFloat::from_i64(1, bits).div(&MpFloat::from_i64(level, bits).mul(&y));
        let (v2, b2) = series(&conj, &inv_y);
        if b1 > 1e-30 || b2 > 1e-30 {
            return Err(Error::PrecisionUnsupported(
                "twisted L series truncation too coarse (raise the a_n table size)".into(),
            ));
        }
        s1.push(v1);
        s2.push(v2);
    }
    let denom = s2[0].sub(&s2[1]);
    if denom.abs().to_f64() < 1e-20 {
        return Err(Error::PrecisionUnsupported(
            "twist root-number solve ill-conditioned".into(),
        ));
    }
    let w = s1[0].sub(&s1[1]).div(&denom);
    let wabs = w.abs().to_f64();
    if (wabs - 1.0).abs() > 1e-8 {
        return Err(Error::ConvergenceFailure(format!(
            "twist pseudo-eigenvalue has |w| = {wabs}, expected 1"
        )));
    }
    let l01 = s1[0].sub(&w.mul(&s2[0]));
    let l2 = s1[2].sub(&w.mul(&s2[2]));
    let disc = l01.sub(&l2).abs().to_f64();
    if disc > 1e-20 {
        return Err(Error::ConvergenceFailure(format!(
            "twisted L split consistency residual {disc}"
        )));
    }
    Ok(l01)
}

/// lambda_f(a/m) = 2 pi int_0^infty f(a/m + i t) dt, evaluated along an
/// Atkin-Lehner-transformed contour. Returns the value together with a
/// certified absolute error bound < 10^-digits.
pub fn lambda_value(
    curve: &CurveData,
    an: &[i64],
    a: i64,
    m: i64,
    digits: u32,
) -> Result<(MpComplex, f64)> {
    if m <= 0 || (m != 1 && gcd_i64(a.rem_euclid(m), m) != 1) {
        return Err(Error::BadInput("lambda_value needs gcd(a, m) = 1, m >= 1".into()));
    }
    let bits = (digits as f64 * 3.33) as u32 + 96;
    let n = curve.conductor;
    if factor(n).iter().any(|&(_, e)| e > 1) {
        return Err(Error::PrecisionUnsupported(
            "direct lambda contour path requires squarefree conductor".into(),
        ));
    }
    // Translate into |a| <= m/2 (f has period 1).
    let mut a = a.rem_euclid(m);
    if 2 * a > m {
        a -= m;
    }
    if m == 1 || a == 0 {
        let v = lambda_zero(curve, an, bits)?;
        return finish_lambda(v, 1e-31, digits);
    }
    let g = gcd_i64(m, n);
    let q = n / g;
    let mut total_bound = 0.0f64;
    let value = if q == 1 {
        // N | m: direct two-series formula.
        let (v, b) = gamma_symbol(curve, an, a.rem_euclid(m), m, bits)?;
        total_bound += b;
        v
    } else {
        let mat = al_matrix(q, n);
        let eps = al_eigenvalue(curve, an, q, bits)?;
        let z0 = MpComplex {
            re: MpFloat::from_rational(&crate::arith::rat(a, m), bits),
            im: MpFloat::from_rational(&crate::arith::rat(1, 2), bits),
        };
        let (p1, r1) = moebius_apply_cusp(&mat, a, m);
        if r1 % n != 0 {
            return Err(Error::ConvergenceFailure(format!(
                "AL flip of {a}/{m} gave denominator {r1} not divisible by N = {n}"
            )));
        }
        let w0 = moebius_apply(&mat, &z0);
        if w0.im.to_f64() < 0.01 {
            return Err(Error::PrecisionUnsupported("transformed contour too low".into()));
        }
        // int_{a/m}^{i inf} = int_{z0}^{i inf} + eps ( {M(a/m), inf} - int_{w0}^{i inf} ).
        let (t0, b0) = tail_integral(an, &z0, bits);
        let (gs, bg) = gamma_symbol(curve, an, p1.rem_euclid(r1), r1, bits)?;
        let (tw, bw) = tail_integral(an, &w0, bits);
        total_bound += b0 + bg + bw;
        let flipped = gs.sub(&tw);
        let flipped = if eps == 1 { flipped } else { flipped.neg() };
        t0.add(&flipped)
    };
    finish_lambda(value, total_bound, digits)
}

fn finish_lambda(v: MpComplex, bound: f64, digits: u32) -> Result<(MpComplex, f64)> {
    let cert = bound * 1.01 + 10f64.powi(-(2 * digits as i32));
    if cert > 10f64.powi(-(digits as i32)) {
        return Err(Error::PrecisionUnsupported(format!(
            "lambda error certificate {cert:.3e} exceeds 1e-{digits}"
        )));
    }
    Ok((v, cert))
}

/// lambda(0) = L(E, 1) as the degenerate symbol {0, infinity}.
fn lambda_zero(curve: &CurveData, an: &[i64], bits: u32) -> Result<MpComplex> {
    let w = fricke_eigenvalue(curve, an, bits)?;
    let n = curve.conductor;
    let y0 = MpFloat::from_i64(1, bits).div(&MpFloat::from_i64(n, bits).sqrt());
    let z = MpComplex { re: MpFloat::zero(bits), im: y0 };
    let (t, bound) = tail_integral(an, &z, bits);
    if bound > 1e-30 {
        return Err(Error::PrecisionUnsupported("lambda(0) truncation too coarse".into()));
    }
    let v = if w == 1 {
        MpComplex::zero(bits)
    } else {
        t.mul_f(&MpFloat::from_i64(2, bits))
    };
    Ok(v)
}

/// The symbol {p/r, infinity} for N | r, gcd(p, r) = 1, via the two-series
/// formula tail((p + i)/r) - tail((p~ + i)/r) with p~ = -p^{-1} mod r.
fn gamma_symbol(
    curve: &CurveData,
    an: &[i64],
    p: i64,
    r: i64,
    bits: u32,
) -> Result<(MpComplex, f64)> {
    assert!(r > 0 && r % curve.conductor == 0);
    let p = p.rem_euclid(r);
    let pinv =
        mod_inv(p, r).ok_or_else(|| Error::BadInput("gamma_symbol: gcd(p,r) != 1".into()))?;
    let ptilde = (-pinv).rem_euclid(r);
    let mk = |num: i64| MpComplex {
        re: MpFloat::from_rational(&crate::arith::rat(num, r), bits),
        im: MpFloat::from_i64(1, bits).div(&MpFloat::from_i64(r, bits)),
    };
    let (t1, b1) = tail_integral(an, &mk(p), bits);
    let (t2, b2) = tail_integral(an, &mk(ptilde), bits);
    Ok((t1.sub(&t2), b1 + b2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_11a1, curve_14a1, curve_37a1};

    #[test]
    fn an_multiplicative() {
        let e = curve_11a1();
        let a = an_table(&e, 200, None);
        assert_eq!(&a[1..=13], &[1, -2, -1, 2, 1, 2, -2, 0, -2, -2, 1, -2, 4]);
        assert_eq!(a[6], a[2] * a[3]);
        assert_eq!(a[9], a[3] * a[3] - 3);
        assert_eq!(a[121], a[11] * a[11]); // 11 | N: a_{p^2} = a_p^2
    }

    #[test]
    fn fricke_signs() {
        let bits = 200;
        let e11 = curve_11a1();
        let a11 = an_table(&e11, 400, None);
        assert_eq!(fricke_eigenvalue(&e11, &a11, bits).unwrap(), -1);
        let e37 = curve_37a1();
        let a37 = an_table(&e37, 800, None);
        assert_eq!(fricke_eigenvalue(&e37, &a37, bits).unwrap(), 1);
        // Product of AL eigenvalues is the Fricke eigenvalue (N = 14).
        let e14 = curve_14a1();
        let a14 = an_table(&e14, 600, None);
        let w = fricke_eigenvalue(&e14, &a14, bits).unwrap();
        let w2 = al_eigenvalue(&e14, &a14, 2, bits).unwrap();
        let w7 = al_eigenvalue(&e14, &a14, 7, bits).unwrap();
        assert_eq!(w2 * w7, w);
    }

    #[test]
    fn l_value_11a1() {
        let e = curve_11a1();
        let a = an_table(&e, 2000, None);
        let l = l_value_s1(&e, &a, 200).unwrap();
        let lf = l.to_f64();
        assert!((lf - 0.25384186085591068).abs() < 1e-12, "L(11a1,1) = {lf}");
        let e37 = curve_37a1();
        let a37 = an_table(&e37, 2000, None);
        assert!(l_value_s1(&e37, &a37, 200).unwrap().is_zero());
    }

    #[test]
    fn lambda_conjugation_symmetry() {
        let e = curve_11a1();
        let an = an_table(&e, 6000, None);
        for (a, m) in [(1i64, 5i64), (2, 5), (1, 7), (3, 7), (2, 11), (5, 22)] {
            let (v1, c1) = lambda_value(&e, &an, a, m, 18).unwrap();
            let (v2, c2) = lambda_value(&e, &an, -a, m, 18).unwrap();
            let diff = v1.conj().sub(&v2).abs().to_f64();
            assert!(diff < 2e-15 + c1 + c2, "conjugation symmetry fails at {a}/{m}: {diff}");
        }
    }

    #[test]
    fn lambda_zero_matches_l() {
        let e = curve_11a1();
        let an = an_table(&e, 4000, None);
        let (v, _) = lambda_value(&e, &an, 0, 1, 20).unwrap();
        let l = l_value_s1(&e, &an, 180).unwrap();
        assert!(v.im.to_f64().abs() < 1e-18);
        assert!((v.re.to_f64() - l.to_f64()).abs() < 1e-18);
    }

    #[test]
    fn lambda_digit_stability() {
        let e = curve_37a1();
        let an = an_table(&e, 9000, None);
        let (v1, c1) = lambda_value(&e, &an, 2, 7, 14).unwrap();
        let (v2, c2) = lambda_value(&e, &an, 2, 7, 20).unwrap();
        assert!(v1.sub(&v2).abs().to_f64() < c1 + c2 + 1e-14);
    }

    #[test]
    fn twisted_l_runs_and_is_stable() {
        let e = curve_11a1();
        let an = an_table(&e, 4000, None);
        for chi in DirichletChar::all(3).iter().filter(|c| !c.is_trivial()) {
            let v1 = l_twisted_s1(&e, &an, chi, 150).unwrap();
            let v2 = l_twisted_s1(&e, &an, chi, 200).unwrap();
            assert!(v1.sub(&v2).abs().to_f64() < 1e-25);
        }
    }

    #[test]
    fn cache_roundtrip_and_verify() {
        let e = curve_11a1();
        let dir = std::env::temp_dir().join("mtcheck_an_cache_test");
        let _ = std::fs::remove_dir_all(&dir);
        let a = an_table(&e, 300, Some(&dir));
        let b = an_table(&e, 250, Some(&dir));
        assert_eq!(&a[..=250], &b[..=250]);
        assert!(verify_an_cache(&e, &dir).unwrap() > 100);
        // Corrupt one line and expect CacheCorrupt.
        let path = dir.join("11a1.an.txt");
        let mut text = std::fs::read_to_string(&path).unwrap();
        text = text.replace("2 -2", "2 7");
        std::fs::write(&path, text).unwrap();
        assert!(matches!(verify_an_cache(&e, &dir), Err(Error::CacheCorrupt(_))));
        let _ = std::fs::remove_dir_all(&dir);
    }
}
