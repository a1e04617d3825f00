//! Polynomial algebra over a Galois ring S and over its residue field:
//! monic division, deterministic residue-field factorization, Hensel lifting
//! anchored to a factor set, the period of an ambient polynomial, the
//! regular (unit × monic) decomposition and the μ/δ lcm–gcd-lift operators.

use std::collections::BTreeSet;
use std::fmt;

use crate::chainring::{Elem, Ring};
use crate::error::{Error, Result};

/// A polynomial with ascending coefficients and trailing zeros stripped;
/// the zero polynomial has an empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring.one())
    }

    pub fn x(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), coeffs: vec![ring.zero(), ring.one()] }
    }

    pub fn constant(c: Elem) -> Poly {
        let ring = c.ring().clone();
        Poly { ring, coeffs: if c.is_zero() { Vec::new() } else { vec![c] } }
    }

    pub fn from_coeffs(ring: &Ring, coeffs: Vec<Elem>) -> Poly {
        for c in &coeffs {
            assert_eq!(c.ring(), ring, "RingMismatch");
        }
        let mut p = Poly { ring: ring.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_int_coeffs(ring: &Ring, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(ring, coeffs.iter().map(|&c| ring.from_int(c)).collect())
    }

    /// c·X^k
    pub fn monomial(c: Elem, k: usize) -> Poly {
        let ring = c.ring().clone();
        if c.is_zero() {
            return Poly::zero(&ring);
        }
        let mut coeffs = vec![ring.zero(); k + 1];
        coeffs[k] = c;
        Poly { ring, coeffs }
    }

    /// X^n
    pub fn x_pow(ring: &Ring, n: usize) -> Poly {
        Poly::monomial(ring.one(), n)
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(Elem::is_zero) == Some(true) {
            self.coeffs.pop();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of X^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map(Elem::is_one) == Some(true)
    }

    pub fn leading(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    /// Constant term; `eval` at 0 returns the same value.
    pub fn constant_term(&self) -> Elem {
        self.coeff(0)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = self.ring.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::from_coeffs(&self.ring, self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by X^k.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { ring: self.ring.clone(), coeffs }
    }

    /// Coefficient-wise image in the residue field.
    pub fn residue(&self) -> Poly {
        let field = self.ring.residue_field();
        Poly::from_coeffs(&field, self.coeffs.iter().map(Elem::residue).collect())
    }

    /// Coefficient-wise natural lift of a residue-field polynomial into `ring`.
    pub fn lift_to(&self, ring: &Ring) -> Poly {
        assert_eq!(self.ring, ring.residue_field(), "RingMismatch");
        Poly::from_coeffs(
            ring,
            self.coeffs
                .iter()
                .map(|c| ring.from_coords(c.coords()).expect("same degree"))
                .collect(),
        )
    }

    /// Coefficient-wise Frobenius σ^k.
    pub fn frobenius(&self, k: u32) -> Poly {
        Poly::from_coeffs(&self.ring, self.coeffs.iter().map(|c| c.frobenius(k)).collect())
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.ring);
        }
        Poly::from_coeffs(
            &self.ring,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| &self.ring.from_int(i as i64) * c)
                .collect(),
        )
    }

    /// Canonical ordering key: (degree, ascending coefficient coordinates).
    pub fn order_key(&self) -> (usize, Vec<Vec<u64>>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().map(|c| c.coords().to_vec()).collect(),
        )
    }
}

/// Canonical text: highest power first, `w` for the ring generator,
/// compound coefficients parenthesized, e.g. `X^5 + 2*X^3 + 2*w^2*X + w`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            match i {
                0 => write!(f, "{cs}")?,
                _ => {
                    if c.is_one() {
                        write!(f, "X")?;
                    } else {
                        write!(f, "{cs}*X")?;
                    }
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "RingMismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            &self.ring,
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
        )
    }
}

impl std::ops::Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "RingMismatch");
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs(
            &self.ring,
            (0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect(),
        )
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(&self.ring, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl std::ops::Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.ring, rhs.ring, "RingMismatch");
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ring);
        }
        let mut out = vec![self.ring.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.ring, out)
    }
}

/// Euclidean division by a monic divisor; exact over the ring because the
/// leading coefficient is invertible.
pub fn divmod_monic(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    assert_eq!(f.ring, g.ring, "RingMismatch");
    if !g.is_monic() {
        return Err(Error::NonMonicDivisor);
    }
    let dg = g.degree().expect("monic is nonzero");
    let mut rem = f.clone();
    if f.coeffs.len() < g.coeffs.len() {
        return Ok((Poly::zero(&f.ring), rem));
    }
    let mut q = vec![f.ring.zero(); f.coeffs.len() - dg];
    while rem.coeffs.len() >= g.coeffs.len() {
        let c = rem.leading().unwrap().clone();
        let k = rem.coeffs.len() - g.coeffs.len();
        q[k] = c.clone();
        for (i, gi) in g.coeffs.iter().enumerate() {
            rem.coeffs[k + i] = &rem.coeffs[k + i] - &(&c * gi);
        }
        rem.trim();
    }
    Ok((Poly::from_coeffs(&f.ring, q), rem))
}

pub fn divides(g: &Poly, f: &Poly) -> Result<bool> {
    Ok(divmod_monic(f, g)?.1.is_zero())
}

// ---------------------------------------------------------------------------
// residue-field machinery
// ---------------------------------------------------------------------------

fn assert_field(f: &Poly) {
    assert!(f.ring.is_field(), "operation requires a residue-field polynomial");
}

/// Monic gcd over F_{p^m}[X] by the Euclidean algorithm.
pub fn field_gcd(f: &Poly, g: &Poly) -> Poly {
    assert_field(f);
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let lead_inv = b.leading().unwrap().inv().expect("field");
        let bm = b.scale(&lead_inv);
        let (_, r) = divmod_monic(&a, &bm).expect("monic");
        a = bm;
        b = r;
    }
    if a.is_zero() {
        return a;
    }
    let lead_inv = a.leading().unwrap().inv().expect("field");
    a.scale(&lead_inv)
}

/// Extended Euclid over F_{p^m}[X]: returns (gcd, u, v) with u·f + v·g = gcd,
/// gcd monic.
pub fn field_ext_gcd(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    assert_field(f);
    let ring = &f.ring;
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut u0, mut u1) = (Poly::one(ring), Poly::zero(ring));
    let (mut v0, mut v1) = (Poly::zero(ring), Poly::one(ring));
    while !r1.is_zero() {
        let lead_inv = r1.leading().unwrap().inv().expect("field");
        let rm = r1.scale(&lead_inv);
        let (q, r) = divmod_monic(&r0, &rm).expect("monic");
        let q = q.scale(&lead_inv);
        let u = &u0 - &(&q * &u1);
        let v = &v0 - &(&q * &v1);
        r0 = r1;
        u0 = u1;
        v0 = v1;
        r1 = r;
        u1 = u;
        v1 = v;
    }
    if r0.is_zero() {
        return (r0, u0, v0);
    }
    let lead_inv = r0.leading().unwrap().inv().expect("field");
    (r0.scale(&lead_inv), u0.scale(&lead_inv), v0.scale(&lead_inv))
}

/// True iff the residue of f is square-free (gcd with its derivative is 1).
pub fn residue_is_squarefree(f: &Poly) -> bool {
    let fbar = if f.ring.is_field() { f.clone() } else { f.residue() };
    if fbar.is_zero() {
        return false;
    }
    let g = field_gcd(&fbar, &fbar.derivative());
    g.degree() == Some(0)
}

/// Monic polynomials of the given degree over a finite field, in ascending
/// lexicographic coefficient order. Used by the deterministic trial-division
/// factorizer; desk-scale degrees keep this affordable.
fn monic_field_polys(field: &Ring, deg: usize) -> Vec<Poly> {
    let elems = field.elements();
    let mut out = Vec::new();
    let mut idx = vec![0usize; deg];
    loop {
        let mut coeffs: Vec<Elem> = idx.iter().map(|&i| elems[i].clone()).collect();
        coeffs.push(field.one());
        out.push(Poly::from_coeffs(field, coeffs));
        let mut i = deg;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < elems.len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Factor a monic square-free polynomial over F_{p^m} into monic
/// irreducibles by deterministic trial division in ascending
/// (degree, coefficient-sequence) order.
pub fn field_factor_squarefree(f: &Poly) -> Result<Vec<Poly>> {
    assert_field(f);
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !residue_is_squarefree(f) {
        return Err(Error::NotSquareFree);
    }
    let field = f.ring.clone();
    let mut rest = f.clone();
    let mut factors = Vec::new();
    let mut deg = 1usize;
    while rest.degree() != Some(0) {
        if deg > rest.degree().unwrap() / 2 {
            factors.push(rest.clone());
            break;
        }
        let mut hit = false;
        for cand in monic_field_polys(&field, deg) {
            let (q, r) = divmod_monic(&rest, &cand)?;
            if r.is_zero() {
                factors.push(cand);
                rest = q;
                hit = true;
                break;
            }
        }
        if !hit {
            deg += 1;
        }
    }
    factors.sort_by_key(Poly::order_key);
    Ok(factors)
}

// ---------------------------------------------------------------------------
// Hensel lifting
// ---------------------------------------------------------------------------

/// The unique factorization of a monic polynomial with square-free residue
/// into monic basic irreducibles, kept in canonical ascending order. All
/// μ/δ lifts are anchored to such a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSet {
    modulus_poly: Poly,
    factors: Vec<Poly>,
}

impl FactorSet {
    pub fn modulus_poly(&self) -> &Poly {
        &self.modulus_poly
    }

    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn ring(&self) -> &Ring {
        self.modulus_poly.ring()
    }

    /// Product of the factors selected by `indices`.
    pub fn product(&self, indices: &BTreeSet<usize>) -> Poly {
        let mut acc = Poly::one(self.ring());
        for &i in indices {
            acc = &acc * &self.factors[i];
        }
        acc
    }

    /// The subset of factor indices whose product is exactly `g`.
    /// Fails with NotADivisor when g is not such a product.
    pub fn subset_of(&self, g: &Poly) -> Result<BTreeSet<usize>> {
        if !g.is_monic() {
            return Err(Error::NotADivisor);
        }
        let gbar = g.residue();
        let mut subset = BTreeSet::new();
        for (i, f) in self.factors.iter().enumerate() {
            if divides(&f.residue(), &gbar)? {
                subset.insert(i);
            }
        }
        if self.product(&subset) != *g {
            return Err(Error::NotADivisor);
        }
        Ok(subset)
    }

    /// Coefficient-wise Frobenius image of the whole set (the factor list is
    /// re-sorted; valid because σ permutes the basic irreducible factors of
    /// a σ-fixed modulus, and maps factor sets to factor sets in general).
    pub fn frobenius(&self, k: u32) -> FactorSet {
        let mut factors: Vec<Poly> = self.factors.iter().map(|f| f.frobenius(k)).collect();
        factors.sort_by_key(Poly::order_key);
        FactorSet { modulus_poly: self.modulus_poly.frobenius(k), factors }
    }
}

/// Hensel-lift the residue factorization of a monic polynomial with
/// square-free residue: linear θ-adic lifting, one correction per power of
/// θ, with Bézout cofactors computed in the residue field.
pub fn hensel_lift_factors(f: &Poly) -> Result<FactorSet> {
    if f.is_zero() || !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !residue_is_squarefree(f) {
        return Err(Error::NotSquareFree);
    }
    let ring = f.ring().clone();
    let residue_factors = field_factor_squarefree(&f.residue())?;
    let mut factors = Vec::with_capacity(residue_factors.len());
    let mut rest = f.clone();
    for (i, gbar) in residue_factors.iter().enumerate() {
        if i + 1 == residue_factors.len() {
            debug_assert_eq!(rest.residue(), *gbar);
            factors.push(rest.clone());
            break;
        }
        let hbar = divmod_monic(&rest.residue(), gbar)?.0;
        let (g, h) = hensel_lift_pair(&rest, gbar, &hbar)?;
        factors.push(g);
        rest = h;
    }
    factors.sort_by_key(Poly::order_key);
    let fs = FactorSet { modulus_poly: f.clone(), factors };
    debug_assert_eq!(
        fs.factors.iter().fold(Poly::one(&ring), |acc, g| &acc * g),
        *f
    );
    Ok(fs)
}

/// Lift the coprime monic factorization π(f) = ḡ·h̄ to f = g·h over S.
fn hensel_lift_pair(f: &Poly, gbar: &Poly, hbar: &Poly) -> Result<(Poly, Poly)> {
    let ring = f.ring().clone();
    let s = ring.nilpotency();
    let (one, u, v) = field_ext_gcd(gbar, hbar);
    debug_assert_eq!(one.degree(), Some(0), "factors must be coprime");
    let mut g = gbar.lift_to(&ring);
    let mut h = hbar.lift_to(&ring);
    let theta = Poly::constant(ring.theta());
    let mut theta_t = theta.clone();
    for _ in 1..s {
        let err = &(f - &(&g * &h)).scale_down_exact(&theta_t);
        let ebar = err.residue();
        if !ebar.is_zero() {
            // dg·h̄ + dh·ḡ = ē with deg(dg) < deg(ḡ)
            let (q, dg) = divmod_monic(&(&ebar * &v), gbar)?;
            let dh = &(&ebar * &u) + &(&q * hbar);
            g = &g + &(&dg.lift_to(&ring) * &theta_t);
            h = &h + &(&dh.lift_to(&ring) * &theta_t);
        }
        theta_t = &theta_t * &theta;
    }
    debug_assert_eq!(&(&g * &h), f);
    Ok((g, h))
}

impl Poly {
    /// Exact division of every coefficient by the constant θ^t (given as a
    /// constant polynomial); panics if not exact. Internal to lifting.
    fn scale_down_exact(&self, theta_t: &Poly) -> Poly {
        let t = match theta_t.constant_term().valuation() {
            v if v < self.ring.nilpotency() => v,
            v => v,
        };
        Poly::from_coeffs(
            &self.ring,
            self.coeffs
                .iter()
                .map(|c| {
                    if c.is_zero() {
                        c.clone()
                    } else {
                        c.div_theta(t)
                    }
                })
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// μ / δ
// ---------------------------------------------------------------------------

/// μ(g₁,…,g_u): the Hensel lift of lcm(π(g₁),…), realized as the product of
/// the union of the factor subsets within the anchored factor set.
pub fn mu(polys: &[Poly], fs: &FactorSet) -> Result<Poly> {
    assert!(!polys.is_empty(), "mu of an empty list");
    let mut union = BTreeSet::new();
    for g in polys {
        union.extend(fs.subset_of(g)?);
    }
    Ok(fs.product(&union))
}

/// δ(g₁,…,g_u): the Hensel lift of gcd(π(g₁),…), realized as the product of
/// the intersection of the factor subsets.
pub fn delta(polys: &[Poly], fs: &FactorSet) -> Result<Poly> {
    assert!(!polys.is_empty(), "delta of an empty list");
    let mut inter: Option<BTreeSet<usize>> = None;
    for g in polys {
        let sub = fs.subset_of(g)?;
        inter = Some(match inter {
            None => sub,
            Some(prev) => prev.intersection(&sub).cloned().collect(),
        });
    }
    Ok(fs.product(&inter.unwrap()))
}

// ---------------------------------------------------------------------------
// period and regular decomposition
// ---------------------------------------------------------------------------

pub const DEFAULT_PERIOD_CAP: u64 = 1 << 20;

/// ℓ_a = min {i ≥ 1 : X^n − π(Ψ(a)) divides X^i − 1}, computed as the order
/// of X modulo the residue ambient. `psi_a` is Ψ(a); the residue ambient
/// must be square-free (otherwise p | ℓ_a and NotCoprimeToP is raised).
pub fn period(n: usize, psi_a: &Poly, cap: u64) -> Result<u64> {
    let ring = psi_a.ring().clone();
    let ambient = &Poly::x_pow(&ring, n) - psi_a;
    let rbar = ambient.residue();
    if !rbar.constant_term().is_unit() {
        return Err(Error::NonUnitA0);
    }
    if !residue_is_squarefree(&rbar) {
        return Err(Error::NotCoprimeToP);
    }
    let field = rbar.ring().clone();
    let x = Poly::x(&field);
    let mut pow = divmod_monic(&x, &rbar)?.1;
    let one = Poly::one(&field);
    for i in 1..=cap {
        if pow == one {
            return Ok(i);
        }
        pow = divmod_monic(&pow.shift(1), &rbar)?.1;
    }
    Err(Error::CapExceeded(cap))
}

/// Write f = θ^t · u · f* with f* monic, u a unit polynomial of S[X] whose
/// residue is the constant leading residue coefficient of f/θ^t, and t the
/// minimum θ-valuation of the coefficients.
pub fn regular_decompose(f: &Poly) -> Result<(u32, Poly, Poly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring().clone();
    let t = f.coeffs.iter().map(Elem::valuation).min().unwrap();
    let f1 = Poly::from_coeffs(&ring, f.coeffs.iter().map(|c| c.div_theta(t)).collect());
    let f1bar = f1.residue();
    let k = f1bar.degree().expect("f1 has a unit coefficient");
    let lambda = f1bar.leading().unwrap().clone();
    let lambda_inv = lambda.inv().expect("field");
    let gbar = f1bar.scale(&lambda_inv);
    // lift the coprime pair (λ, ḡ) linearly: f1 = u·f* with π(u) = λ
    let mut fstar = gbar.lift_to(&ring);
    let mut u = Poly::constant(ring.from_coords(lambda.coords()).expect("residue widen"));
    let theta = Poly::constant(ring.theta());
    let mut theta_t = theta.clone();
    for _ in 1..ring.nilpotency() {
        let err = (&f1 - &(&u * &fstar)).scale_down_exact(&theta_t);
        let ebar = err.residue();
        if !ebar.is_zero() {
            let (q, r) = divmod_monic(&ebar, &gbar)?;
            let dfstar = r.scale(&lambda_inv);
            let du = q;
            fstar = &fstar + &(&dfstar.lift_to(&ring) * &theta_t);
            u = &u + &(&du.lift_to(&ring) * &theta_t);
        }
        theta_t = &theta_t * &theta;
    }
    debug_assert_eq!(&(&u * &fstar), &f1);
    debug_assert!(fstar.is_monic() && fstar.degree() == Some(k));
    Ok((t, u, fstar))
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------
