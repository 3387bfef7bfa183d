//! Fixed-precision binary floats and complex numbers on top of `BigInt`.
//!
//! A value is `m * 2^e` with working precision carried by the context the
//! caller threads through (`bits`). Operations truncate to `bits + GUARD`
//! mantissa bits; callers obtain certified accuracy by combining analytic
//! tail bounds with a generous guard, and the verification suites re-run at
//! higher precision to confirm stability.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

const GUARD: u32 = 64;

#[derive(Clone, Debug)]
pub struct MpFloat {
    pub m: BigInt,
    pub e: i64,
    pub bits: u32,
}

impl MpFloat {
    pub fn zero(bits: u32) -> Self {
        MpFloat { m: BigInt::zero(), e: 0, bits }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        MpFloat { m: BigInt::from(n), e: 0, bits }.normalised()
    }

    pub fn from_bigint(n: BigInt, bits: u32) -> Self {
        MpFloat { m: n, e: 0, bits }.normalised()
    }

    pub fn from_rational(x: &BigRational, bits: u32) -> Self {
        let s = (bits + GUARD) as i64;
        let q = (x.numer() << (s as usize)) / x.denom();
        MpFloat { m: q, e: -s, bits }.normalised()
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = BigRational::from_float(x).expect("finite float");
        Self::from_rational(&r, bits)
    }

    fn normalised(mut self) -> Self {
        if self.m.is_zero() {
            self.e = 0;
            return self;
        }
        let len = self.m.bits() as i64;
        let target = (self.bits + GUARD) as i64;
        if len > target {
            let shift = (len - target) as usize;
            self.m >>= shift;
            self.e += shift as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn neg(&self) -> Self {
        MpFloat { m: -self.m.clone(), e: self.e, bits: self.bits }
    }

    pub fn abs(&self) -> Self {
        MpFloat { m: self.m.abs(), e: self.e, bits: self.bits }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.m.is_zero() {
            return other.clone();
        }
        if other.m.is_zero() {
            return self.clone();
        }
        let (hi, lo) = if self.e >= other.e { (self, other) } else { (other, self) };
        let gap = hi.e - lo.e;
        let window = (self.bits + 2 * GUARD) as i64;
        if gap > window + hi.m.bits() as i64 {
            return hi.clone();
        }
        let m = (&hi.m << (gap as usize)) + &lo.m;
        MpFloat { m, e: lo.e, bits: self.bits }.normalised()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        MpFloat { m: &self.m * &other.m, e: self.e + other.e, bits: self.bits }.normalised()
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        MpFloat { m: &self.m * k, e: self.e, bits: self.bits }.normalised()
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.m.is_zero(), "division by zero");
        if self.m.is_zero() {
            return self.clone();
        }
        let s = (self.bits + 2 * GUARD) as i64 + (other.m.bits() as i64 - self.m.bits() as i64).max(0);
        let q = (&self.m << (s as usize)) / &other.m;
        MpFloat { m: q, e: self.e - other.e - s, bits: self.bits }.normalised()
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self.div(&MpFloat::from_i64(k, self.bits))
    }

    /// Square root of a nonnegative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.m.is_negative(), "sqrt of negative float");
        if self.m.is_zero() {
            return self.clone();
        }
        let target = 2 * (self.bits + GUARD) as i64;
        let mut s = target - self.m.bits() as i64;
        if (self.e - s) % 2 != 0 {
            s += 1;
        }
        let t = if s >= 0 { &self.m << (s as usize) } else { &self.m >> ((-s) as usize) };
        let r = t.sqrt();
        MpFloat { m: r, e: (self.e - s) / 2, bits: self.bits }.normalised()
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.sub(other);
        match d.m.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn is_negative(&self) -> bool {
        self.m.is_negative()
    }

    /// log2 of |x| rounded towards -inf; None for 0.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.m.is_zero() {
            None
        } else {
            Some(self.m.bits() as i64 - 1 + self.e)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let len = self.m.bits() as i64;
        let keep = 64i64.min(len);
        let sh = len - keep;
        let top = (&self.m >> (sh as usize)).to_i128().unwrap() as f64;
        top * 2f64.powi((self.e + sh) as i32)
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from_integer(&self.m << (self.e as usize))
        } else {
            BigRational::new(self.m.clone(), BigInt::one() << ((-self.e) as usize))
        }
    }

    /// Nearest integer.
    pub fn round(&self) -> BigInt {
        let r = self.to_rational();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        (r + half).floor().to_integer()
    }

    pub fn pow2(bits: u32, e: i64) -> Self {
        MpFloat { m: BigInt::one(), e, bits }
    }
}

/// pi at the given precision (Machin's formula, computed fresh per call).
pub fn pi(bits: u32) -> MpFloat {
    let prec = bits + 2 * GUARD;
    let scale = BigInt::one() << (prec as usize);
    let at = |inv_x: i64| -> BigInt {
        // arctan(1/x) * 2^prec by the alternating series.
        let x2 = BigInt::from(inv_x) * inv_x;
        let mut term = &scale / inv_x;
        let mut sum = term.clone();
        let mut k = 1i64;
        while !term.is_zero() {
            term = term / &x2;
            if term.is_zero() {
                break;
            }
            let contrib = &term / (2 * k + 1);
            if k % 2 == 1 {
                sum -= contrib;
            } else {
                sum += contrib;
            }
            k += 1;
        }
        sum
    };
    let m = at(5) * 16u8 - at(239) * 4u8;
    MpFloat { m, e: -(prec as i64), bits }.normalised()
}

/// e^x by scaling and Taylor series.
pub fn exp(x: &MpFloat) -> MpFloat {
    let bits = x.bits;
    let one = MpFloat::from_i64(1, bits);
    if x.is_zero() {
        return one;
    }
    // Halve until |x| < 2^-4.
    let l2 = x.log2_floor().unwrap();
    let k = (l2 + 5).max(0) as u32;
    let y = MpFloat { m: x.m.clone(), e: x.e - k as i64, bits };
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&y).div_i64(n);
        if term.m.is_zero() || term.log2_floor().unwrap() < -((bits + GUARD) as i64) {
            break;
        }
        sum = sum.add(&term);
        n += 1;
    }
    let mut r = sum;
    for _ in 0..k {
        r = r.mul(&r);
    }
    r
}

/// (cos t, sin t) by halving and Taylor.
pub fn cos_sin(t: &MpFloat) -> (MpFloat, MpFloat) {
    let bits = t.bits;
    if t.is_zero() {
        return (MpFloat::from_i64(1, bits), MpFloat::zero(bits));
    }
    let l2 = t.log2_floor().unwrap();
    let k = (l2 + 5).max(0) as u32;
    let y = MpFloat { m: t.m.clone(), e: t.e - k as i64, bits };
    let y2 = y.mul(&y);
    let mut c = MpFloat::from_i64(1, bits);
    let mut s = y.clone();
    let mut cterm = MpFloat::from_i64(1, bits);
    let mut sterm = y.clone();
    let mut n = 1i64;
    loop {
        cterm = cterm.mul(&y2).div_i64((2 * n - 1) * (2 * n)).neg();
        sterm = sterm.mul(&y2).div_i64((2 * n) * (2 * n + 1)).neg();
        let dead = |f: &MpFloat| f.m.is_zero() || f.log2_floor().unwrap() < -((bits + GUARD) as i64);
        c = c.add(&cterm);
        s = s.add(&sterm);
        if dead(&cterm) && dead(&sterm) {
            break;
        }
        n += 1;
    }
    for _ in 0..k {
        let c2 = c.mul(&c).mul_i64(2).sub(&MpFloat::from_i64(1, bits));
        let s2 = s.mul(&c).mul_i64(2);
        c = c2;
        s = s2;
    }
    (c, s)
}

#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: MpFloat,
    pub im: MpFloat,
}

impl MpComplex {
    pub fn zero(bits: u32) -> Self {
        MpComplex { re: MpFloat::zero(bits), im: MpFloat::zero(bits) }
    }

    pub fn real(x: MpFloat) -> Self {
        let bits = x.bits;
        MpComplex { re: x, im: MpFloat::zero(bits) }
    }

    pub fn from_f64s(re: f64, im: f64, bits: u32) -> Self {
        MpComplex { re: MpFloat::from_f64(re, bits), im: MpFloat::from_f64(im, bits) }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn add(&self, o: &Self) -> Self {
        MpComplex { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        MpComplex { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> Self {
        MpComplex { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> Self {
        MpComplex { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        MpComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn mul_f(&self, f: &MpFloat) -> Self {
        MpComplex { re: self.re.mul(f), im: self.im.mul(f) }
    }

    pub fn div(&self, o: &Self) -> Self {
        let n2 = o.re.mul(&o.re).add(&o.im.mul(&o.im));
        let num = self.mul(&o.conj());
        MpComplex { re: num.re.div(&n2), im: num.im.div(&n2) }
    }

    pub fn abs2(&self) -> MpFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn abs(&self) -> MpFloat {
        self.abs2().sqrt()
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let bits = self.bits();
        if self.re.is_zero() && self.im.is_zero() {
            return self.clone();
        }
        let r = self.abs();
        let two = MpFloat::from_i64(2, bits);
        let u = r.add(&self.re).div(&two).sqrt();
        let v = r.sub(&self.re).div(&two).sqrt();
        let v = if self.im.is_negative() { v.neg() } else { v };
        MpComplex { re: u, im: v }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// e^{2 pi i z} for z = x + iy: e^{-2 pi y} (cos 2 pi x + i sin 2 pi x).
pub fn exp_2pi_i(z: &MpComplex) -> MpComplex {
    let bits = z.bits();
    let two_pi = pi(bits).mul_i64(2);
    let radius = exp(&two_pi.mul(&z.im).neg());
    let (c, s) = cos_sin(&two_pi.mul(&z.re));
    MpComplex { re: radius.mul(&c), im: radius.mul(&s) }
}

/// Primitive root of unity e^{2 pi i a / m}.
pub fn unit_root(a: i64, m: i64, bits: u32) -> MpComplex {
    let a = a.rem_euclid(m);
    let two_pi = pi(bits).mul_i64(2);
    let t = two_pi.mul_i64(a).div_i64(m);
    let (c, s) = cos_sin(&t);
    MpComplex { re: c, im: s }
}

/// Continued-fraction rational reconstruction: the first convergent p/q with
/// |x - p/q| < tol and q <= qmax. The result is verified against tol.
pub fn reconstruct_rational(x: &MpFloat, tol: &MpFloat, qmax: &BigInt) -> Option<BigRational> {
    let target = x.to_rational();
    let mut a = target.clone();
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (a.floor().to_integer(), BigInt::one());
    for _ in 0..256 {
        let cand = BigRational::new(p1.clone(), q1.clone());
        let err = MpFloat::from_rational(&(&target - &cand), x.bits).abs();
        if err.cmp_value(tol) == Ordering::Less {
            return Some(cand);
        }
        if q1 > *qmax {
            return None;
        }
        let frac = &a - a.floor();
        if frac.is_zero() {
            return None;
        }
        a = frac.recip();
        let ai = a.floor().to_integer();
        let p2 = &ai * &p1 + &p0;
        let q2 = &ai * &q1 + &q0;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn close(a: f64, b: f64, eps: f64) -> bool {
        (a - b).abs() < eps
    }

    #[test]
    fn basic_arithmetic() {
        let bits = 128;
        let a = MpFloat::from_f64(1.5, bits);
        let b = MpFloat::from_f64(2.25, bits);
        assert!(close(a.add(&b).to_f64(), 3.75, 1e-12));
        assert!(close(a.mul(&b).to_f64(), 3.375, 1e-12));
        assert!(close(b.div(&a).to_f64(), 1.5, 1e-12));
        assert!(close(MpFloat::from_i64(2, bits).sqrt().to_f64(), 2f64.sqrt(), 1e-12));
    }

    #[test]
    fn pi_and_exp() {
        let bits = 256;
        assert!(close(pi(bits).to_f64(), std::f64::consts::PI, 1e-14));
        assert!(close(exp(&MpFloat::from_i64(1, bits)).to_f64(), std::f64::consts::E, 1e-12));
        assert!(close(exp(&MpFloat::from_f64(-7.25, bits)).to_f64(), (-7.25f64).exp(), 1e-14));
        // High-precision self check: exp(x)*exp(-x) = 1
        let x = MpFloat::from_f64(3.71, bits);
        let p = exp(&x).mul(&exp(&x.neg()));
        let one = MpFloat::from_i64(1, bits);
        let err = p.sub(&one).abs();
        assert!(err.log2_floor().map_or(true, |l| l < -200));
    }

    #[test]
    fn trig_identities() {
        let bits = 256;
        for (a, m) in [(1i64, 3i64), (2, 7), (5, 12), (10, 11)] {
            let z = unit_root(a, m, bits);
            let n = z.abs2();
            let err = n.sub(&MpFloat::from_i64(1, bits)).abs();
            assert!(err.log2_floor().map_or(true, |l| l < -200));
            // z^m = 1
            let mut w = MpComplex::real(MpFloat::from_i64(1, bits));
            for _ in 0..m {
                w = w.mul(&z);
            }
            let e = w.sub(&MpComplex::real(MpFloat::from_i64(1, bits))).abs();
            assert!(e.log2_floor().map_or(true, |l| l < -180));
        }
    }

    #[test]
    fn complex_sqrt_squares_back() {
        let bits = 192;
        let z = MpComplex::from_f64s(-3.2, 4.7, bits);
        let s = z.sqrt();
        let back = s.mul(&s);
        let err = back.sub(&z).abs();
        assert!(err.log2_floor().map_or(true, |l| l < -150));
        assert!(!s.re.is_negative());
    }

    #[test]
    fn reconstruction() {
        let bits = 192;
        let x = MpFloat::from_rational(&rat(-22, 35), bits);
        let tol = MpFloat::pow2(bits, -120);
        let got = reconstruct_rational(&x, &tol, &num_bigint::BigInt::from(1_000_000)).unwrap();
        assert_eq!(got, rat(-22, 35));
        // 1/5 from an approximation of 0.2
        let y = MpFloat::from_rational(&rat(1, 5), bits)
            .add(&MpFloat::pow2(bits, -150));
        let got2 = reconstruct_rational(&y, &MpFloat::pow2(bits, -100), &BigInt::from(1000)).unwrap();
        assert_eq!(got2, rat(1, 5));
    }
}
