//! Exact modular symbols [a/m]^+- for Gamma_0(N) by the Manin-symbol
//! algorithm: generators P^1(Z/N), the two- and three-term relations, Hecke
//! operators through Heilbronn-style coset paths, the star involution, and
//! the one-dimensional +- dual eigenspaces of the newform. The two
//! normalisation scalars are pinned against numerical period integrals and
//! locked in by rational reconstruction.

pub use crate::periods::{period_lattice, PeriodPair};

use crate::arith::{gcd_i64, primes_up_to, rat};
use crate::characters::DirichletChar;
use crate::curve::{compute_ap, CurveData};
use crate::linalg::QMat;
use crate::lseries::{an_table, l_twisted_s1, lambda_value};
use crate::numeric::{reconstruct_rational, MpComplex, MpFloat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Exact value of a modular symbol pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ModSymValue {
    pub plus: BigRational,
    pub minus: BigRational,
}

/// The per-curve immutable Manin-symbol engine.
#[derive(Debug)]
pub struct ManinBasis {
    pub n: i64,
    p1: Vec<(i64, i64)>,
    p1_index: BTreeMap<(i64, i64), usize>,
    /// Expression of each P^1 generator in the quotient basis.
    expr: Vec<Vec<BigRational>>,
    pub dim: usize,
    vplus: Vec<BigRational>,
    vminus: Vec<BigRational>,
    pub splus: BigRational,
    pub sminus: BigRational,
    /// How the normalisation was pinned (recorded in theta provenance).
    pub provenance: String,
}

fn canonical_p1(n: i64, c: i64, d: i64) -> (i64, i64) {
    let c = c.rem_euclid(n);
    let d = d.rem_euclid(n);
    let mut best = None;
    for u in 1..n.max(2) {
        if gcd_i64(u, n) != 1 {
            continue;
        }
        let cand = ((u * c).rem_euclid(n), (u * d).rem_euclid(n));
        if best.map_or(true, |b| cand < b) {
            best = Some(cand);
        }
    }
    best.unwrap_or((0, 0))
}

impl ManinBasis {
    fn build(curve: &CurveData, digits: u32) -> Result<ManinBasis> {
        let n = curve.conductor;
        // P^1(Z/N).
        let mut p1 = vec![];
        let mut p1_index = BTreeMap::new();
        for c in 0..n {
            for d in 0..n {
                if gcd_i64(gcd_i64(c, d), n) != 1 {
                    continue;
                }
                let canon = canonical_p1(n, c, d);
                if !p1_index.contains_key(&canon) {
                    p1_index.insert(canon, p1.len());
                    p1.push(canon);
                }
            }
        }
        let np = p1.len();
        let idx = |c: i64, d: i64| -> usize { p1_index[&canonical_p1(n, c, d)] };
        // Relations x + xS and x + xU + xU^2 (right action on row vectors).
        let mut rel = QMat::zero(2 * np, np);
        for (i, &(c, d)) in p1.iter().enumerate() {
            let s = idx(d, -c);
            rel[(i, i)] += BigRational::one();
            rel[(i, s)] += BigRational::one();
            let u1 = idx(d, -c - d);
            let u2 = idx(-c - d, c);
            rel[(np + i, i)] += BigRational::one();
            rel[(np + i, u1)] += BigRational::one();
            rel[(np + i, u2)] += BigRational::one();
        }
        let pivots = rel.rref();
        let free: Vec<usize> = (0..np).filter(|c| !pivots.contains(c)).collect();
        let dim = free.len();
        let mut expr = vec![vec![BigRational::zero(); dim]; np];
        for (k, &fc) in free.iter().enumerate() {
            expr[fc][k] = BigRational::one();
        }
        for (r, &pc) in pivots.iter().enumerate() {
            for (k, &fc) in free.iter().enumerate() {
                expr[pc][k] = -rel[(r, fc)].clone();
            }
        }
        let mut basis = ManinBasis {
            n,
            p1,
            p1_index,
            expr,
            dim,
            vplus: vec![],
            vminus: vec![],
            splus: BigRational::zero(),
            sminus: BigRational::zero(),
            provenance: String::new(),
        };
        basis.solve_dual_eigenvectors(curve)?;
        basis.pin_normalisation(curve, digits)?;
        Ok(basis)
    }

    fn manin_index(&self, c: i64, d: i64) -> usize {
        self.p1_index[&canonical_p1(self.n, c, d)]
    }

    fn manin_vector(&self, c: i64, d: i64) -> Vec<BigRational> {
        self.expr[self.manin_index(c, d)].clone()
    }

    /// Vector of the symbol {infinity, num/den} via Manin's
    /// continued-fraction trick (den = 0 gives the empty path).
    fn cf_vector(&self, num: i64, den: i64) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); self.dim];
        if den == 0 {
            return acc;
        }
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        // Convergents p_k/q_k of num/den with p_{-1}/q_{-1} = 1/0; each step
        // contributes the Manin symbol with bottom row
        // ((-1)^{k-1} q_k, q_{k-1}).
        let (mut p0, mut q0, mut p1, mut q1) = (0i64, 1i64, 1i64, 0i64);
        let (mut a, mut b) = (num, den);
        let mut k = 0usize;
        loop {
            let q = a.div_euclid(b);
            let r = a - q * b;
            let p2 = q * p1 + p0;
            let q2 = q * q1 + q0;
            let sign = if k % 2 == 0 { -1 } else { 1 };
            let v = self.manin_vector(sign * q2, q1);
            for (t, s) in acc.iter_mut().zip(&v) {
                *t += s;
            }
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            a = b;
            b = r;
            k += 1;
            if b == 0 {
                break;
            }
        }
        let g = gcd_i64(num, den);
        debug_assert_eq!((p1, q1), (num / g, den / g));
        acc
    }

    /// Vector of the path {alpha, beta} with cusps as (num, den), den = 0
    /// meaning infinity.
    fn path_vector(&self, alpha: (i64, i64), beta: (i64, i64)) -> Vec<BigRational> {
        let a = self.cf_vector(alpha.0, alpha.1);
        let b = self.cf_vector(beta.0, beta.1);
        b.iter().zip(&a).map(|(x, y)| x - y).collect()
    }

    /// Matrix of T_ell (ell not dividing N) on the quotient space.
    fn hecke_matrix(&self, ell: i64) -> QMat {
        let mut m = QMat::zero(self.dim, self.dim);
        // Representatives: pick, for each free generator, a coset lift.
        let free_reps = self.free_reps();
        for (col, &(c, d)) in free_reps.iter().enumerate() {
            let (a, b, c1, d1) = lift_to_sl2(self.n, c, d);
            // base path {b/d1, a/c1}
            let alpha = (b, d1);
            let beta = (a, c1);
            let mut acc = vec![BigRational::zero(); self.dim];
            let mats: Vec<[i64; 4]> = std::iter::once([ell, 0, 0, 1])
                .chain((0..ell).map(|j| [1, j, 0, ell]))
                .collect();
            for h in mats {
                let ha = apply_cusp(&h, alpha);
                let hb = apply_cusp(&h, beta);
                let v = self.path_vector(ha, hb);
                for (t, s) in acc.iter_mut().zip(&v) {
                    *t += s;
                }
            }
            for row in 0..self.dim {
                m[(row, col)] = acc[row].clone();
            }
        }
        m
    }

    /// The star involution on the quotient space.
    fn star_matrix(&self) -> QMat {
        let mut m = QMat::zero(self.dim, self.dim);
        for (col, &(c, d)) in self.free_reps().iter().enumerate() {
            let v = self.manin_vector(-c, d);
            for row in 0..self.dim {
                m[(row, col)] = v[row].clone();
            }
        }
        m
    }

    fn free_reps(&self) -> Vec<(i64, i64)> {
        // The generators whose expression vector is a standard basis vector.
        let mut reps = vec![(0i64, 0i64); self.dim];
        let mut found = vec![false; self.dim];
        for (i, e) in self.expr.iter().enumerate() {
            if let Some(k) = standard_basis_index(e) {
                if !found[k] {
                    reps[k] = self.p1[i];
                    found[k] = true;
                }
            }
        }
        assert!(found.iter().all(|&f| f));
        reps
    }

    fn solve_dual_eigenvectors(&mut self, curve: &CurveData) -> Result<()> {
        // Sturm bound for weight 2 on Gamma_0(N).
        let n = self.n;
        let index: i64 = crate::arith::factor(n)
            .iter()
            .fold(n, |acc, &(p, _)| acc / p * (p + 1));
        let sturm = index / 6 + 1;
        let star_t = transpose(&self.star_matrix());
        // Start from the full dual space and cut by (T_ell^t - a_ell).
        let mut space: Vec<Vec<BigRational>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        for ell in primes_up_to(sturm.max(2)) {
            if space.len() <= 2 {
                break;
            }
            if !curve.is_good(ell) {
                continue;
            }
            let a_ell = compute_ap(curve, ell)?;
            let tt = transpose(&self.hecke_matrix(ell));
            space = cut_eigenspace(&space, &tt, &rat(a_ell, 1));
        }
        if space.len() != 2 {
            return Err(Error::ConvergenceFailure(format!(
                "dual eigenspace for {} has dimension {} (expected 2)",
                curve.label,
                space.len()
            )));
        }
        // Split by the star involution.
        let plus = cut_eigenspace(&space, &star_t, &rat(1, 1));
        let minus = cut_eigenspace(&space, &star_t, &rat(-1, 1));
        if plus.len() != 1 || minus.len() != 1 {
            return Err(Error::ConvergenceFailure(
                "star involution did not split the dual eigenspace".into(),
            ));
        }
        self.vplus = normalise_first(&plus[0]);
        self.vminus = normalise_first(&minus[0]);
        Ok(())
    }

    /// Raw (unnormalised) +- values of the path {a/m, infinity}.
    fn raw_symbol(&self, a: i64, m: i64) -> (BigRational, BigRational) {
        let v = self.path_vector((a, m), (1, 0));
        let p = dot(&self.vplus, &v);
        let q = dot(&self.vminus, &v);
        (p, q)
    }

    fn pin_normalisation(&mut self, curve: &CurveData, digits: u32) -> Result<()> {
        let bits = (digits as f64 * 3.33) as u32 + 96;
        let pp = period_lattice(curve, digits)?;
        let nmax = 26.0 * (curve.conductor as f64).sqrt() * (digits as f64) * 0.37 + 600.0;
        let an = an_table(curve, nmax as usize, None);
        let mut notes = vec![];
        // Plus side: trivial character first (L(E,1)/Omega+), then even
        // primitive characters; minus side: odd primitive characters.
        let l1 = crate::lseries::l_value_s1(curve, &an, bits)?;
        let mut splus: Option<BigRational> = None;
        if l1.abs().to_f64() > 1e-10 {
            let (rawp, _) = self.raw_symbol(0, 1);
            if !rawp.is_zero() {
                let target = l1.div(&pp.omega_plus);
                let ratio = target.div(&MpFloat::from_rational(&rawp, bits));
                if let Some(s) = stable_reconstruct(&ratio, digits) {
                    notes.push("plus pinned at the trivial character".to_string());
                    splus = Some(s);
                }
            }
        }
        let mut sminus: Option<BigRational> = None;
        for mchi in 3..=24i64 {
            if splus.is_some() && sminus.is_some() {
                break;
            }
            if gcd_i64(mchi, curve.conductor) != 1 {
                continue;
            }
            for chi in DirichletChar::all(mchi) {
                if !chi.is_primitive() || chi.is_trivial() {
                    continue;
                }
                let want_plus = chi.is_even();
                if (want_plus && splus.is_some()) || (!want_plus && sminus.is_some()) {
                    continue;
                }
                let lchi = match l_twisted_s1(curve, &an, &chi.conj(), bits) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                if lchi.abs().to_f64() < 1e-10 {
                    continue;
                }
                let gauss = chi.gauss_sum(bits);
                let omega = if want_plus {
                    MpComplex::real(pp.omega_plus.clone())
                } else {
                    MpComplex { re: MpFloat::zero(bits), im: pp.omega_minus_im.clone() }
                };
                let target = gauss.mul(&lchi).div(&omega);
                // raw = sum_a chi(a) raw_symbol(a/mchi)^{+-}
                let mut raw = MpComplex::zero(bits);
                for a in 1..mchi {
                    if gcd_i64(a, mchi) != 1 {
                        continue;
                    }
                    let (rp, rm) = self.raw_symbol(a, mchi);
                    let r = if want_plus { rp } else { rm };
                    if r.is_zero() {
                        continue;
                    }
                    raw = raw.add(&chi.eval_numeric(a, bits).mul_f(&MpFloat::from_rational(&r, bits)));
                }
                if raw.abs().to_f64() < 1e-12 {
                    continue;
                }
                let ratio = target.div(&raw);
                if ratio.im.abs().to_f64() > 1e-10 * (1.0 + ratio.re.abs().to_f64()) {
                    continue;
                }
                if let Some(s) = stable_reconstruct(&ratio.re, digits) {
                    notes.push(format!(
                        "{} pinned at a primitive character mod {mchi} (order {})",
                        if want_plus { "plus" } else { "minus" },
                        chi.order
                    ));
                    if want_plus {
                        splus = Some(s);
                    } else {
                        sminus = Some(s);
                    }
                }
            }
        }
        let splus = splus.ok_or_else(|| {
            Error::NormalizationAmbiguous(format!(
                "no nonvanishing even pinning value found for {}",
                curve.label
            ))
        })?;
        let sminus = sminus.ok_or_else(|| {
            Error::NormalizationAmbiguous(format!(
                "no nonvanishing odd pinning value found for {}",
                curve.label
            ))
        })?;
        self.splus = splus;
        self.sminus = sminus;
        self.provenance = notes.join("; ");
        Ok(())
    }

    /// Exact [a/m]^+- for gcd(a, m) = 1.
    pub fn symbol(&self, a: i64, m: i64) -> ModSymValue {
        assert!(m >= 1 && (m == 1 || gcd_i64(a.rem_euclid(m), m) == 1));
        let (rp, rm) = self.raw_symbol(a, m);
        ModSymValue { plus: rp * &self.splus, minus: rm * &self.sminus }
    }
}

fn standard_basis_index(v: &[BigRational]) -> Option<usize> {
    let mut hit = None;
    for (i, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !c.is_one() || hit.is_some() {
            return None;
        }
        hit = Some(i);
    }
    hit
}

fn transpose(m: &QMat) -> QMat {
    QMat::from_fn(m.cols, m.rows, |i, j| m[(j, i)].clone())
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalise_first(v: &[BigRational]) -> Vec<BigRational> {
    let lead = v.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigRational::one);
    v.iter().map(|c| c / &lead).collect()
}

/// Rational reconstruction with a residual well below the working accuracy
/// and a denominator cap; the caller re-derives the value at independent
/// characters, so a generous cap is safe here.
fn stable_reconstruct(x: &MpFloat, digits: u32) -> Option<BigRational> {
    let bits = x.bits;
    let tol = MpFloat::from_f64(10f64.powi(-(digits as i32) + 8), bits);
    let qmax = BigInt::from(10u64.pow(9));
    let cand = reconstruct_rational(x, &tol, &qmax)?;
    // Residual must be far smaller than the coarsest admissible spacing
    // 1/qmax^2 would allow, i.e. the candidate explains x to full accuracy.
    let resid = x.sub(&MpFloat::from_rational(&cand, bits)).abs().to_f64();
    if resid < 10f64.powi(-(digits as i32) + 6) {
        Some(cand)
    } else {
        None
    }
}

/// Basis (as rows) of the eigenspace of `mat` for eigenvalue `lam`
/// intersected with the row space given by `space`.
fn cut_eigenspace(space: &[Vec<BigRational>], mat: &QMat, lam: &BigRational) -> Vec<Vec<BigRational>> {
    // Vectors x = sum c_i space_i with (mat - lam) x = 0: solve for c.
    let dim = mat.rows;
    let k = space.len();
    let mut sys = QMat::zero(dim, k);
    for (j, s) in space.iter().enumerate() {
        let img: Vec<BigRational> =
            (0..dim).map(|i| (0..dim).map(|t| &mat[(i, t)] * &s[t]).sum()).collect();
        for i in 0..dim {
            sys[(i, j)] = &img[i] - lam * &s[i];
        }
    }
    let ker = sys.kernel();
    ker.iter()
        .map(|c| {
            let mut v = vec![BigRational::zero(); dim];
            for (j, s) in space.iter().enumerate() {
                for i in 0..dim {
                    v[i] += &c[j] * &s[i];
                }
            }
            v
        })
        .collect()
}

fn lift_to_sl2(n: i64, c: i64, d: i64) -> (i64, i64, i64, i64) {
    // Find representatives (c1, d1) = (c, d) mod n with gcd(c1, d1) = 1 and
    // a, b with a d1 - b c1 = 1.
    let (mut c1, mut d1) = (c.rem_euclid(n), d.rem_euclid(n));
    if c1 == 0 && d1 == 0 {
        panic!("invalid P1 element");
    }
    for t in 0..n {
        let cand_d = d1 + t * n;
        if gcd_i64(c1, cand_d) == 1 {
            d1 = cand_d;
            break;
        }
        let cand_c = c1 + t * n;
        if gcd_i64(cand_c, d1) == 1 {
            c1 = cand_c;
            break;
        }
    }
    if gcd_i64(c1, d1) != 1 {
        // final fallback: shift both
        c1 += n;
        while gcd_i64(c1, d1) != 1 {
            d1 += n;
        }
    }
    let (g, x, y) = crate::arith::ext_gcd(d1, -c1);
    debug_assert_eq!(g, 1);
    // a d1 + b (-c1) = 1
    (x, y, c1, d1)
}

fn apply_cusp(h: &[i64; 4], (p, q): (i64, i64)) -> (i64, i64) {
    let num = h[0] * p + h[1] * q;
    let den = h[2] * p + h[3] * q;
    let g = gcd_i64(num, den).max(1);
    (num / g, den / g)
}

// --- per-curve cache ---------------------------------------------------------

static BASIS_CACHE: OnceLock<Mutex<BTreeMap<String, Arc<ManinBasis>>>> = OnceLock::new();

/// The shared Manin-symbol engine for a curve (30-digit pinning).
pub fn manin_basis(curve: &CurveData) -> Result<Arc<ManinBasis>> {
    let cache = BASIS_CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&curve.label) {
        return Ok(hit.clone());
    }
    let built = Arc::new(ManinBasis::build(curve, 30)?);
    cache.lock().unwrap().insert(curve.label.clone(), built.clone());
    Ok(built)
}

/// Exact modular symbol pair via the Manin engine.
pub fn modular_symbol_pair(curve: &CurveData, a: i64, m: i64) -> Result<ModSymValue> {
    Ok(manin_basis(curve)?.symbol(a, m))
}

/// Numeric-reconstruction path: rationalise Re(lambda)/Omega+ and
/// Im(lambda)/|Omega^-| with the torsion-bound denominator. Used as the
/// independent cross-check of the exact path.
pub fn modular_symbol_pair_numeric(
    curve: &CurveData,
    a: i64,
    m: i64,
    digits: u32,
) -> Result<ModSymValue> {
    let bits = (digits as f64 * 3.33) as u32 + 96;
    let nmax = ((curve.conductor * m) as f64 * 0.55 * digits as f64
        * std::f64::consts::LN_10
        / std::f64::consts::TAU) as usize
        + 4000;
    let an = an_table(curve, nmax, None);
    let (lam, cert) = lambda_value(curve, &an, a, m, digits)?;
    let pp = period_lattice(curve, digits)?;
    let t = crate::curve::torsion_order(curve);
    // Factor 2 on top of the torsion bound: the lattice shape lets the
    // individual +- parts be half-integral relative to the bound.
    let qmax = BigInt::from(2 * pp.c_inf * t);
    let tol_f = (cert * 1e3).max(10f64.powi(-(digits as i32) + 6));
    let tol = MpFloat::from_f64(tol_f, bits);
    let plus_f = lam.re.div(&pp.omega_plus);
    let minus_f = lam.im.div(&pp.omega_minus_im);
    let plus = reconstruct_rational(&plus_f, &tol, &qmax).ok_or_else(|| {
        Error::PrecisionUnsupported(format!("cannot reconstruct [a/m]+ at {a}/{m}"))
    })?;
    let minus = reconstruct_rational(&minus_f, &tol, &qmax).ok_or_else(|| {
        Error::PrecisionUnsupported(format!("cannot reconstruct [a/m]- at {a}/{m}"))
    })?;
    Ok(ModSymValue { plus, minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{curve_11a1, curve_14a1, curve_37a1};

    #[test]
    fn dimensions() {
        // dim = 2g + c - 1: 3 for N = 11, 5 for N = 14 and N = 37.
        assert_eq!(manin_basis(&curve_11a1()).unwrap().dim, 3);
        assert_eq!(manin_basis(&curve_14a1()).unwrap().dim, 5);
        assert_eq!(manin_basis(&curve_37a1()).unwrap().dim, 5);
    }

    #[test]
    fn cf_roundtrip_consistency() {
        // Every Manin generator equals the CF decomposition of its own path.
        let b = manin_basis(&curve_11a1()).unwrap();
        for &(c, d) in b.p1.iter() {
            let (a1, b1, c1, d1) = lift_to_sl2(b.n, c, d);
            debug_assert_eq!(a1 * d1 - b1 * c1, 1);
            let v = b.path_vector((b1, d1), (a1, c1));
            let direct = b.manin_vector(c, d);
            assert_eq!(v, direct, "CF roundtrip fails at ({c}:{d})");
        }
    }

    #[test]
    fn hecke_dual_consistency() {
        // T_ell^t v = a_ell v for the found dual vectors, ell up to 13.
        for curve in [curve_11a1(), curve_37a1()] {
            let b = manin_basis(&curve).unwrap();
            for ell in [2i64, 3, 5, 7, 13] {
                if !curve.is_good(ell) {
                    continue;
                }
                let a_ell = compute_ap(&curve, ell).unwrap();
                let tt = transpose(&b.hecke_matrix(ell));
                for v in [&b.vplus, &b.vminus] {
                    let tv: Vec<BigRational> = (0..b.dim)
                        .map(|i| (0..b.dim).map(|j| &tt[(i, j)] * &v[j]).sum())
                        .collect();
                    let want: Vec<BigRational> = v.iter().map(|x| x * rat(a_ell, 1)).collect();
                    assert_eq!(tv, want, "T_{ell} eigen relation fails for {}", curve.label);
                }
            }
        }
    }

    #[test]
    fn theta_baseline_11a1() {
        // [0/1]+ = L(E,1)/Omega+ = 1/5; minus part 0 by conjugation.
        let s = modular_symbol_pair(&curve_11a1(), 0, 1).unwrap();
        assert_eq!(s.plus, rat(1, 5));
        assert!(s.minus.is_zero());
    }

    #[test]
    fn parity_of_symbols() {
        let e = curve_11a1();
        for (a, m) in [(1i64, 5i64), (2, 5), (3, 7), (2, 11), (7, 22)] {
            let s1 = modular_symbol_pair(&e, a, m).unwrap();
            let s2 = modular_symbol_pair(&e, -a, m).unwrap();
            assert_eq!(s1.plus, s2.plus);
            assert_eq!(s1.minus, -s2.minus.clone() * rat(-1, 1) * rat(-1, 1));
            assert_eq!(s2.minus, -s1.minus.clone());
        }
    }

    #[test]
    fn integrality_denominator_11a1() {
        // The theta coefficients [a/11]+ + [a/11]- obey the torsion bound
        // (5 times them is integral); the individual parts can pick up an
        // extra 2 from the Neron-lattice shape at c_inf = 1.
        let e = curve_11a1();
        for a in 1..11 {
            let s = modular_symbol_pair(&e, a, 11).unwrap();
            let sum = s.plus.clone() + s.minus.clone();
            assert!((sum * rat(5, 1)).is_integer(), "5([{a}/11]+ + [{a}/11]-) not integral");
            assert!((s.plus * rat(10, 1)).is_integer());
            assert!((s.minus * rat(10, 1)).is_integer());
        }
    }

    #[test]
    fn exact_vs_numeric_paths() {
        let e = curve_11a1();
        for (a, m) in [(0i64, 1i64), (1, 5), (2, 5), (1, 7), (2, 11), (3, 11)] {
            let ex = modular_symbol_pair(&e, a, m).unwrap();
            let nu = modular_symbol_pair_numeric(&e, a, m, 18).unwrap();
            assert_eq!(ex, nu, "paths disagree at {a}/{m}");
        }
    }

    #[test]
    fn rank_one_curve_pins() {
        // 37a1 has L(E,1) = 0: pinning must fall through to characters.
        let b = manin_basis(&curve_37a1()).unwrap();
        assert!(!b.splus.is_zero());
        assert!(!b.sminus.is_zero());
        let s = modular_symbol_pair(&curve_37a1(), 0, 1).unwrap();
        assert!(s.plus.is_zero() && s.minus.is_zero());
    }
}
