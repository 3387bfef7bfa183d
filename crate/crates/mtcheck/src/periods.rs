//! Real and imaginary Neron periods via the arithmetic-geometric mean.
//!
//! The lattice of the minimal model is spanned by the least positive real
//! period omega1 and a second generator whose purely imaginary part
//! omega2_im recovers Omega^- as in the Neron-lattice description:
//! Omega^+ = c_inf * omega1 and Omega^- = omega2_im (both signs of Delta).

use crate::curve::CurveData;
use crate::lseries::an_table;
use crate::numeric::{exp_2pi_i, pi, MpComplex, MpFloat};
use crate::{Error, Result};
use num_traits::Signed;

#[derive(Clone, Debug)]
pub struct PeriodPair {
    /// Omega^+ > 0, the full real period c_inf * omega1.
    pub omega_plus: MpFloat,
    /// |Omega^- / i| > 0.
    pub omega_minus_im: MpFloat,
    pub c_inf: i64,
    /// Least positive real period of the lattice.
    pub omega1: MpFloat,
}

fn agm(mut a: MpFloat, mut b: MpFloat, bits: u32) -> Result<MpFloat> {
    for _ in 0..400 {
        let diff = a.sub(&b).abs();
        if diff.is_zero()
            || diff.log2_floor().unwrap() < a.log2_floor().unwrap_or(0) - bits as i64 - 16
        {
            return Ok(a);
        }
        let am = a.add(&b).div_i64(2);
        let gm = a.mul(&b).sqrt();
        a = am;
        b = gm;
    }
    Err(Error::ConvergenceFailure("AGM stagnated".into()))
}

/// Largest real root (and for Delta > 0 all three roots, descending) of
/// x^3 + (b2/4) x^2 + (b4/2) x + b6/4, refined by Newton at full precision.
fn cubic_roots(curve: &CurveData, bits: u32) -> (Vec<MpFloat>, bool) {
    let c2 = crate::numeric::MpFloat::from_rational(
        &num_rational::BigRational::new(curve.b2.clone(), 4.into()),
        bits,
    );
    let c1 = crate::numeric::MpFloat::from_rational(
        &num_rational::BigRational::new(curve.b4.clone(), 2.into()),
        bits,
    );
    let c0 = crate::numeric::MpFloat::from_rational(
        &num_rational::BigRational::new(curve.b6.clone(), 4.into()),
        bits,
    );
    let all_real = curve.disc.is_positive();
    let f2 = |x: f64| {
        let (a2, a1, a0) = (c2.to_f64(), c1.to_f64(), c0.to_f64());
        x * x * x + a2 * x * x + a1 * x + a0
    };
    // Bracket the real roots crudely in f64, then polish.
    let bound = 2.0 + c2.to_f64().abs() + c1.to_f64().abs() + c0.to_f64().abs();
    let mut seeds = vec![];
    let steps = 4000;
    let mut prev_x = -bound;
    let mut prev_v = f2(prev_x);
    for i in 1..=steps {
        let x = -bound + 2.0 * bound * (i as f64) / steps as f64;
        let v = f2(x);
        if prev_v == 0.0 {
            seeds.push(prev_x);
        } else if (prev_v < 0.0) != (v < 0.0) {
            seeds.push((prev_x + x) / 2.0);
        }
        prev_x = x;
        prev_v = v;
    }
    seeds.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    let newton = |seed: f64| -> MpFloat {
        let mut x = MpFloat::from_f64(seed, bits);
        for _ in 0..(bits as usize / 10 + 40) {
            let fx = x
                .mul(&x)
                .mul(&x)
                .add(&c2.mul(&x).mul(&x))
                .add(&c1.mul(&x))
                .add(&c0);
            let dfx = x.mul(&x).mul_i64(3).add(&c2.mul(&x).mul_i64(2)).add(&c1);
            let step = fx.div(&dfx);
            x = x.sub(&step);
            if step.is_zero() || step.log2_floor().unwrap_or(i64::MIN / 2) < -(bits as i64 + 8) {
                break;
            }
        }
        x
    };
    let mut roots: Vec<MpFloat> = seeds.into_iter().map(newton).collect();
    roots.sort_by(|a, b| b.cmp_value(a));
    roots.dedup_by(|a, b| a.sub(b).abs().log2_floor().map_or(true, |l| l < -(bits as i64 / 2)));
    (roots, all_real)
}

pub fn period_lattice(curve: &CurveData, digits: u32) -> Result<PeriodPair> {
    if digits < 15 {
        return Err(Error::PrecisionUnsupported("period_lattice needs digits >= 15".into()));
    }
    let bits = (digits as f64 * 3.33) as u32 + 96;
    let (roots, all_real) = cubic_roots(curve, bits);
    let pi_v = pi(bits);
    let c_inf = if curve.disc.is_positive() { 2 } else { 1 };
    let (omega1, omega2_im);
    if all_real {
        if roots.len() != 3 {
            return Err(Error::ConvergenceFailure(
                "expected three real roots for Delta > 0".into(),
            ));
        }
        let (e1, e2, e3) = (&roots[0], &roots[1], &roots[2]);
        let s13 = e1.sub(e3).sqrt();
        let s12 = e1.sub(e2).sqrt();
        let s23 = e2.sub(e3).sqrt();
        omega1 = pi_v.div(&agm(s13.clone(), s12, bits)?);
        omega2_im = pi_v.div(&agm(s13, s23, bits)?);
    } else {
        if roots.is_empty() {
            return Err(Error::ConvergenceFailure("no real root found".into()));
        }
        let e1 = &roots[0];
        // Deflate: x^2 + P x + Q with complex roots mu +- i nu.
        let c2 = MpFloat::from_rational(
            &num_rational::BigRational::new(curve.b2.clone(), 4.into()),
            bits,
        );
        let c1 = MpFloat::from_rational(
            &num_rational::BigRational::new(curve.b4.clone(), 2.into()),
            bits,
        );
        let p = c2.add(e1);
        let q = c1.add(&e1.mul(&p));
        let mu = p.div_i64(-2);
        let nu2 = q.sub(&mu.mul(&mu));
        if nu2.is_negative() || nu2.is_zero() {
            return Err(Error::ConvergenceFailure("complex pair collapsed".into()));
        }
        let c = e1.sub(&mu); // e1 - Re(e2)
        let a_mod = c.mul(&c).add(&nu2).sqrt(); // |e1 - e2|
        let half = |x: MpFloat| x.div_i64(2);
        let re_s = half(a_mod.add(&c)).sqrt(); // Re sqrt(e1 - e2)
        let im_s = half(a_mod.sub(&c)).sqrt(); // |Im sqrt(e1 - e2)|
        omega1 = pi_v.div(&agm(a_mod.sqrt(), re_s, bits)?);
        omega2_im = pi_v.div(&agm(a_mod.sqrt(), im_s, bits)?);
    }
    let (omega_plus, omega_minus_im) = match c_inf {
        2 => (omega1.mul_i64(2), omega2_im.clone()),
        _ => (omega1.clone(), omega2_im.clone()),
    };
    if omega_plus.is_negative() || omega_plus.is_zero() {
        return Err(Error::ConvergenceFailure("nonpositive real period".into()));
    }
    Ok(PeriodPair { omega_plus, omega_minus_im, c_inf, omega1 })
}

/// Eisenstein-series round trip: recompute c4 and c6 from the computed
/// lattice and return the largest relative defect (the consistency oracle).
pub fn eisenstein_roundtrip(curve: &CurveData, pp: &PeriodPair, digits: u32) -> Result<f64> {
    let bits = (digits as f64 * 3.33) as u32 + 96;
    // tau = omega2 / omega1 with omega2 = (omega1 + i omega2_im)/2 for
    // c_inf = 1 and i omega2_im for c_inf = 2.
    let tau = if pp.c_inf == 1 {
        MpComplex {
            re: MpFloat::from_rational(&crate::arith::rat(1, 2), bits),
            im: pp.omega_minus_im.div(&pp.omega1).div_i64(2),
        }
    } else {
        MpComplex { re: MpFloat::zero(bits), im: pp.omega_minus_im.div(&pp.omega1) }
    };
    let q = exp_2pi_i(&tau);
    let absq = q.abs().to_f64();
    let nterms = ((digits as f64 + 8.0) * std::f64::consts::LN_10 / -absq.ln()).ceil() as usize + 4;
    let mut e4 = MpComplex::real(MpFloat::from_i64(1, bits));
    let mut e6 = MpComplex::real(MpFloat::from_i64(1, bits));
    let mut qn = MpComplex::real(MpFloat::from_i64(1, bits));
    for n in 1..=nterms {
        qn = qn.mul(&q);
        let mut s3 = 0i64;
        let mut s5 = 0i64;
        for d in crate::arith::divisors(n as i64) {
            s3 += d.pow(3);
            s5 += d.pow(5);
        }
        e4 = e4.add(&qn.mul_f(&MpFloat::from_i64(240 * s3, bits)));
        e6 = e6.sub(&qn.mul_f(&MpFloat::from_i64(504 * s5, bits)));
    }
    let two_pi_over = pi(bits).mul_i64(2).div(&pp.omega1);
    let f4 = {
        let t2 = two_pi_over.mul(&two_pi_over);
        t2.mul(&t2)
    };
    let f6 = {
        let t2 = two_pi_over.mul(&two_pi_over);
        t2.mul(&t2).mul(&t2)
    };
    let c4_rt = e4.mul_f(&f4);
    let c6_rt = e6.mul_f(&f6);
    let c4_exact = MpFloat::from_bigint(curve.c4.clone(), bits);
    let c6_exact = MpFloat::from_bigint(curve.c6.clone(), bits);
    let rel = |got: &MpComplex, want: &MpFloat| -> f64 {
        let scale = want.abs().to_f64().max(1.0);
        got.sub(&MpComplex::real(want.clone())).abs().to_f64() / scale
    };
    Ok(rel(&c4_rt, &c4_exact).max(rel(&c6_rt, &c6_exact)))
}

/// Convenience: L(E,1) / Omega^+ as a float (used for normalisation pinning).
pub fn l_over_omega(curve: &CurveData, digits: u32) -> Result<MpFloat> {
    let bits = (digits as f64 * 3.33) as u32 + 96;
    let nmax = (curve.conductor as f64).sqrt() as usize * (digits as usize) + 500;
    let a = an_table(curve, nmax, None);
    let l = crate::lseries::l_value_s1(curve, &a, bits)?;
    let pp = period_lattice(curve, digits)?;
    Ok(l.div(&pp.omega_plus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_11a1, curve_14a1, curve_37a1, curve_49a1};

    #[test]
    fn components_by_sign_of_delta() {
        assert_eq!(period_lattice(&curve_11a1(), 20).unwrap().c_inf, 1);
        assert_eq!(period_lattice(&curve_37a1(), 20).unwrap().c_inf, 2);
    }

    #[test]
    fn omega1_known_values() {
        let pp = period_lattice(&curve_11a1(), 30).unwrap();
        assert!((pp.omega1.to_f64() - 1.2692093042795534).abs() < 1e-12);
        let pp37 = period_lattice(&curve_37a1(), 30).unwrap();
        assert!((pp37.omega1.to_f64() - 2.993458646231959).abs() < 1e-11);
    }

    #[test]
    fn eisenstein_consistency() {
        for e in [curve_11a1(), curve_14a1(), curve_37a1(), curve_49a1()] {
            let digits = 30;
            let pp = period_lattice(&e, digits).unwrap();
            let defect = eisenstein_roundtrip(&e, &pp, digits).unwrap();
            assert!(defect < 1e-25, "lattice roundtrip defect {defect} for {}", e.label);
        }
    }

    #[test]
    fn l_over_omega_11a1_is_one_fifth() {
        let r = l_over_omega(&curve_11a1(), 25).unwrap();
        assert!((r.to_f64() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn precision_grows() {
        let lo = period_lattice(&curve_11a1(), 20).unwrap();
        let hi = period_lattice(&curve_11a1(), 40).unwrap();
        let diff = lo.omega1.sub(&hi.omega1).abs().to_f64();
        assert!(diff < 1e-18);
    }
}
