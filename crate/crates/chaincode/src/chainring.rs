//! Exact arithmetic in the finite chain ring tower Z_{p^a} ⊆ S_r ⊆ S with
//! S = GR(p^a, m): residue map to F_{p^m}, Teichmüller decomposition,
//! Frobenius automorphism and trace.
//!
//! Elements are held in power-basis coordinates modulo p^a, which keeps
//! addition and multiplication cheap; the Teichmüller form is computed on
//! demand by iterating the fixpoint map x ↦ x^{p^m}. Only the unramified
//! case e = 1 is implemented: GR(p, m) = F_{p^m} serves as the residue field,
//! so a field is just a ring with nilpotency index 1.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

// ---------------------------------------------------------------------------
// F_p[X] helpers used only for modulus selection and validation.
// ---------------------------------------------------------------------------

fn fp_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn fp_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    // g monic
    debug_assert_eq!(*g.last().unwrap(), 1);
    let mut r = f.to_vec();
    fp_trim(&mut r);
    while r.len() >= g.len() {
        let c = *r.last().unwrap();
        let k = r.len() - g.len();
        for (i, &gi) in g.iter().enumerate() {
            r[k + i] = (r[k + i] + p * p - (c * gi) % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

/// Monic polynomials over F_p in ascending (degree, coefficient-sequence) order.
fn fp_monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (p as u128).pow(deg as u32);
    (0..total).map(move |mut idx| {
        let mut coeffs = vec![0u64; deg + 1];
        // most-significant digit first so the coefficient sequence is lex ordered
        for i in (0..deg).rev() {
            coeffs[i] = (idx % p as u128) as u64;
            idx /= p as u128;
        }
        coeffs[deg] = 1;
        coeffs
    })
}

fn fp_is_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for g in fp_monic_polys(p, d) {
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Ring
// ---------------------------------------------------------------------------

#[derive(Debug)]
struct RingData {
    p: u64,
    a: u32,
    m: u32,
    e: u32,
    s: u32,
    /// monic basic irreducible of degree m, ascending coefficients mod p^a
    modulus: Vec<u64>,
    /// p^a
    pa: u64,
    /// p^m
    pm: u64,
}

/// A Galois ring GR(p^a, m) = Z_{p^a}[X]/⟨f⟩. Cheap to clone (shared handle).
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p
            && self.0.a == other.0.a
            && self.0.m == other.0.m
            && self.0.modulus == other.0.modulus
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.a.hash(state);
        self.0.m.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GR({}^{}, {})", self.0.p, self.0.a, self.0.m)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "Z_{}", self.0.pa)
        } else if self.0.a == 1 {
            write!(f, "F_{}", self.0.pm)
        } else {
            write!(f, "GR({},{})", self.0.pa, self.0.m)
        }
    }
}

impl Ring {
    /// The Galois ring GR(p^a, m). When `modulus` is omitted the
    /// deterministic default is chosen: the lexicographically least (by
    /// ascending coefficient sequence) monic degree-m polynomial over
    /// Z_{p^a} whose mod-p reduction is irreducible.
    pub fn galois(p: u64, a: u32, m: u32, modulus: Option<Vec<u64>>) -> Result<Ring> {
        Ring::chain(p, a, m, 1, modulus)
    }

    /// General chain-ring constructor. Only e = 1 is supported; e > 1 would
    /// be an Eisenstein extension and is rejected.
    pub fn chain(p: u64, a: u32, m: u32, e: u32, modulus: Option<Vec<u64>>) -> Result<Ring> {
        if e != 1 {
            return Err(Error::UnsupportedExtension);
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if a == 0 || m == 0 {
            return Err(Error::BadDescriptor("a and m must be positive".into()));
        }
        let pa = checked_pow(p, a).ok_or(Error::Overflow)?;
        let pm = checked_pow(p, m).ok_or(Error::Overflow)?;
        if pa > (1 << 31) || pm > (1 << 31) {
            return Err(Error::Overflow);
        }
        let modulus = match modulus {
            Some(mut coeffs) => {
                if coeffs.len() != m as usize + 1 {
                    return Err(Error::BadDescriptor(format!(
                        "modulus must have degree {m} ({} coefficients)",
                        m + 1
                    )));
                }
                for c in coeffs.iter_mut() {
                    *c %= pa;
                }
                if coeffs[m as usize] != 1 {
                    return Err(Error::NotMonic);
                }
                let fbar: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
                if !fp_is_irreducible(&fbar, p) {
                    return Err(Error::ReducibleModulus);
                }
                coeffs
            }
            None => default_modulus(p, a, m),
        };
        Ok(Ring(Arc::new(RingData { p, a, m, e, s: a, modulus, pa, pm })))
    }

    /// Z_{p^a} as GR(p^a, 1).
    pub fn integers_mod(p: u64, a: u32) -> Result<Ring> {
        Ring::galois(p, a, 1, None)
    }

    pub fn prime(&self) -> u64 {
        self.0.p
    }
    pub fn char_exp(&self) -> u32 {
        self.0.a
    }
    pub fn degree(&self) -> u32 {
        self.0.m
    }
    pub fn ramification(&self) -> u32 {
        self.0.e
    }
    /// Nilpotency index s (= a in the unramified case).
    pub fn nilpotency(&self) -> u32 {
        self.0.s
    }
    /// p^a, the characteristic.
    pub fn char_modulus(&self) -> u64 {
        self.0.pa
    }
    /// p^m, the residue field size.
    pub fn residue_size(&self) -> u64 {
        self.0.pm
    }
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }
    pub fn is_field(&self) -> bool {
        self.0.a == 1
    }
    /// |S| = p^{a·m}.
    pub fn size(&self) -> u128 {
        (self.0.pa as u128).pow(self.0.m)
    }
    /// |S^×| = (p^m − 1)·p^{m(s−1)}.
    pub fn unit_count(&self) -> u128 {
        (self.0.pm as u128 - 1) * (self.0.pm as u128).pow(self.0.s - 1)
    }

    /// The residue field F_{p^m} = GR(p, m) with the reduced modulus.
    pub fn residue_field(&self) -> Ring {
        if self.is_field() {
            return self.clone();
        }
        let modulus: Vec<u64> = self.0.modulus.iter().map(|c| c % self.0.p).collect();
        Ring(Arc::new(RingData {
            p: self.0.p,
            a: 1,
            m: self.0.m,
            e: 1,
            s: 1,
            modulus,
            pa: self.0.p,
            pm: self.0.pm,
        }))
    }

    pub fn zero(&self) -> Elem {
        Elem { ring: self.clone(), coords: vec![0; self.0.m as usize] }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// θ, the generator of the maximal ideal (= p in a Galois ring).
    pub fn theta(&self) -> Elem {
        self.from_int(self.0.p as i64)
    }

    pub fn from_int(&self, v: i64) -> Elem {
        let pa = self.0.pa as i64;
        let mut coords = vec![0; self.0.m as usize];
        coords[0] = v.rem_euclid(pa) as u64;
        Elem { ring: self.clone(), coords }
    }

    /// Element from ascending power-basis coordinates (reduced mod p^a).
    pub fn from_coords(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.0.m as usize {
            return Err(Error::BadDescriptor(format!(
                "element needs {} coordinates, got {}",
                self.0.m,
                coords.len()
            )));
        }
        Ok(Elem {
            ring: self.clone(),
            coords: coords.iter().map(|c| c % self.0.pa).collect(),
        })
    }

    /// The class of X modulo the ring modulus (for m = 1 this is the
    /// constant −modulus[0]).
    pub fn gen(&self) -> Elem {
        if self.0.m == 1 {
            let c = self.0.modulus[0] % self.0.pa;
            self.from_int(-(c as i64))
        } else {
            let mut coords = vec![0; self.0.m as usize];
            coords[1] = 1;
            Elem { ring: self.clone(), coords }
        }
    }

    /// All p^{am} elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Elem> {
        let m = self.0.m as usize;
        let pa = self.0.pa;
        let total = self.size();
        let mut out = Vec::with_capacity(total as usize);
        let mut coords = vec![0u64; m];
        loop {
            out.push(Elem { ring: self.clone(), coords: coords.clone() });
            // lex odometer: last coordinate fastest
            let mut i = m;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < pa {
                    break;
                }
                coords[i] = 0;
            }
        }
    }

    /// Γ(S) = {x : x^{p^m} = x}, listed in the residue field's element order.
    pub fn teichmuller_set(&self) -> Vec<Elem> {
        let field = self.residue_field();
        field
            .elements()
            .into_iter()
            .map(|c| self.teichmuller_lift(&c))
            .collect()
    }

    /// The unique γ ∈ Γ(S) with residue `c`.
    pub fn teichmuller_lift(&self, c: &Elem) -> Elem {
        assert_eq!(c.ring, self.residue_field(), "RingMismatch");
        let mut x = Elem { ring: self.clone(), coords: c.coords.clone() };
        for _ in 1..self.0.s {
            x = x.pow(self.0.pm);
        }
        x
    }

    /// A Teichmüller element whose residue generates F_{p^m}^× (the least
    /// such in element order).
    pub fn teichmuller_generator(&self) -> Elem {
        let field = self.residue_field();
        let target = self.0.pm - 1;
        for c in field.elements() {
            if c.is_zero() {
                continue;
            }
            if field.mult_order(&c) == target {
                return self.teichmuller_lift(&c);
            }
        }
        unreachable!("F_{{p^m}}^x is cyclic");
    }

    fn mult_order(&self, x: &Elem) -> u64 {
        let mut acc = x.clone();
        let mut k = 1;
        while !acc.is_one() {
            acc = &acc * x;
            k += 1;
        }
        k
    }
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

fn default_modulus(p: u64, a: u32, m: u32) -> Vec<u64> {
    let pa = checked_pow(p, a).expect("checked at construction");
    // scan ascending coefficient sequences; the reduction mod p repeats with
    // period p, so scanning residues 0..p per slot finds the least candidate
    let mut coeffs = vec![0u64; m as usize + 1];
    coeffs[m as usize] = 1;
    loop {
        let fbar: Vec<u64> = coeffs.iter().map(|c| c % p).collect();
        if fp_is_irreducible(&fbar, p) {
            return coeffs;
        }
        let mut i = m as usize;
        loop {
            assert!(i > 0, "no basic irreducible of degree {m} found");
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < pa {
                break;
            }
            coeffs[i] = 0;
        }
    }
}

// ---------------------------------------------------------------------------
// Elem
// ---------------------------------------------------------------------------

/// An element of a Galois ring in power-basis coordinates (canonical form:
/// every coordinate reduced mod p^a).
#[derive(Clone)]
pub struct Elem {
    ring: Ring,
    coords: Vec<u64>,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.coords == other.coords
    }
}
impl Eq for Elem {}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl std::hash::Hash for Elem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl Elem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0] == 1 && self.coords[1..].iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    /// θ-adic valuation: the largest t with x ∈ θ^t S; the valuation of 0 is s.
    pub fn valuation(&self) -> u32 {
        let s = self.ring.0.s;
        if self.is_zero() {
            return s;
        }
        let p = self.ring.0.p;
        let mut t = 0;
        let mut q: u64 = 1;
        'outer: while t < s {
            let next = q * p;
            for &c in &self.coords {
                if c % next != 0 {
                    break 'outer;
                }
            }
            q = next;
            t += 1;
        }
        t
    }

    /// Image under the epimorphism π : S → F_{p^m}.
    pub fn residue(&self) -> Elem {
        let field = self.ring.residue_field();
        let p = self.ring.0.p;
        Elem {
            ring: field,
            coords: self.coords.iter().map(|c| c % p).collect(),
        }
    }

    /// Exact division by θ^t. Panics unless every coordinate is divisible.
    pub fn div_theta(&self, t: u32) -> Elem {
        let q = checked_pow(self.ring.0.p, t).expect("valuation within range");
        Elem {
            ring: self.ring.clone(),
            coords: self
                .coords
                .iter()
                .map(|c| {
                    assert_eq!(c % q, 0, "division by theta^{t} is not exact");
                    c / q
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, computed by lifting the residue-field inverse
    /// θ-adically with the Newton step z ← z(2 − xz).
    pub fn inv(&self) -> Result<Elem> {
        if !self.is_unit() {
            return Err(Error::NonUnit);
        }
        let field = self.ring.residue_field();
        let rbar = self.residue();
        // residue inverse via x^(q-2) in F_{p^m}
        let inv_bar = if field.residue_size() == 2 {
            rbar
        } else {
            rbar.pow(field.residue_size() - 2)
        };
        let mut z = Elem { ring: self.ring.clone(), coords: inv_bar.coords.clone() };
        let two = self.ring.from_int(2);
        for _ in 1..self.ring.0.s {
            z = &z * &(&two - &(self * &z));
        }
        debug_assert!((self * &z).is_one());
        Ok(z)
    }

    /// Teichmüller decomposition (a_0, …, a_{s−1}) with x = Σ a_t θ^t and
    /// every a_t ∈ Γ(S).
    pub fn teichmuller_decompose(&self) -> Vec<Elem> {
        let s = self.ring.0.s;
        let mut digits = Vec::with_capacity(s as usize);
        let mut rest = self.clone();
        for t in 0..s {
            let gamma = self.ring.teichmuller_lift(&rest.residue());
            if t + 1 < s {
                rest = (&rest - &gamma).div_theta(1);
            }
            digits.push(gamma);
        }
        digits
    }

    /// σ^k: each Teichmüller coordinate raised to the p^k power. σ^m = id.
    pub fn frobenius(&self, k: u32) -> Elem {
        let m = self.ring.0.m;
        let k = k % m;
        if k == 0 {
            return self.clone();
        }
        let pk = checked_pow(self.ring.0.p, k).expect("p^k <= p^m");
        let theta = self.ring.theta();
        let mut acc = self.ring.zero();
        let mut scale = self.ring.one();
        for digit in self.teichmuller_decompose() {
            acc = &acc + &(&digit.pow(pk) * &scale);
            scale = &scale * &theta;
        }
        acc
    }

    /// Tr_d(x) = Σ_{i=0}^{d−1} σ^{ir}(x); lands in the fixed subring S_r.
    pub fn trace(&self, ctx: &GaloisContext) -> Elem {
        let mut acc = self.ring.zero();
        for i in 0..ctx.d {
            acc = &acc + &self.frobenius((i * ctx.r) % self.ring.0.m);
        }
        acc
    }

    /// True iff σ^r(x) = x, i.e. x lies in S_r.
    pub fn in_subring(&self, ctx: &GaloisContext) -> bool {
        self.frobenius(ctx.r % self.ring.0.m) == *self
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Elem {
    /// Canonical textual form: polynomial in the generator symbol `w`,
    /// highest power first, e.g. `3*w+3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coords.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, _) => write!(f, "w^{i}")?,
                (_, 1) => write!(f, "{c}*w")?,
                (_, _) => write!(f, "{c}*w^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn same_ring(x: &Elem, y: &Elem) {
    assert_eq!(x.ring, y.ring, "RingMismatch");
}

macro_rules! elem_binop {
    ($trait:ident, $fn:ident, $body:expr) => {
        impl std::ops::$trait<&Elem> for &Elem {
            type Output = Elem;
            fn $fn(self, rhs: &Elem) -> Elem {
                same_ring(self, rhs);
                let pa = self.ring.0.pa;
                let f: fn(u64, u64, u64) -> u64 = $body;
                let coords = self
                    .coords
                    .iter()
                    .zip(rhs.coords.iter())
                    .map(|(&x, &y)| f(x, y, pa))
                    .collect();
                Elem { ring: self.ring.clone(), coords }
            }
        }
    };
}

elem_binop!(Add, add, |x, y, pa| (x + y) % pa);
elem_binop!(Sub, sub, |x, y, pa| (x + pa - y) % pa);

impl std::ops::Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        let pa = self.ring.0.pa;
        Elem {
            ring: self.ring.clone(),
            coords: self.coords.iter().map(|&c| (pa - c) % pa).collect(),
        }
    }
}

impl std::ops::Mul<&Elem> for &Elem {
    type Output = Elem;
    fn mul(self, rhs: &Elem) -> Elem {
        same_ring(self, rhs);
        let m = self.ring.0.m as usize;
        let pa = self.ring.0.pa;
        let modulus = &self.ring.0.modulus;
        // schoolbook product, then reduce by the monic modulus
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in self.coords.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in rhs.coords.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % pa;
            }
        }
        for i in (m..2 * m - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for (j, &fj) in modulus.iter().enumerate().take(m) {
                let idx = i - m + j;
                prod[idx] = (prod[idx] + pa * pa - (c * fj) % pa) % pa;
            }
        }
        prod.truncate(m);
        Elem { ring: self.ring.clone(), coords: prod }
    }
}

// ---------------------------------------------------------------------------
// GaloisContext
// ---------------------------------------------------------------------------

/// A divisor pair (r, d) with m = r·d, fixing the subring S_r, the
/// automorphism σ^r and the trace Tr_d.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisContext {
    pub r: u32,
    pub d: u32,
}

impl GaloisContext {
    pub fn new(ring: &Ring, r: u32) -> Result<GaloisContext> {
        let m = ring.degree();
        if r == 0 || m % r != 0 {
            return Err(Error::SubringDegree { r, m });
        }
        Ok(GaloisContext { r, d: m / r })
    }
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    fn gr42() -> Ring {
        Ring::galois(2, 2, 2, None).unwrap()
    }

    #[test]
    fn default_modulus_of_gr42_matches_alpha_squared_relation() {
        let s = gr42();
        assert_eq!(s.modulus(), &[1, 1, 1]);
        let alpha = s.gen();
        let alpha2 = &alpha * &alpha;
        // α² = 3α + 3
        assert_eq!(alpha2, s.from_coords(&[3, 3]).unwrap());
        assert!((&alpha2 * &alpha).is_one());
    }

    #[test]
    fn ring_constructors() {
        // paper ring with explicit modulus X² + X + 1
        let s = Ring::galois(2, 2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(s, gr42());
        // F₂ = GR(2, 1) with modulus X
        let f2 = Ring::galois(2, 1, 1, Some(vec![0, 1])).unwrap();
        assert_eq!(f2.size(), 2);
        assert!(f2.is_field());
        // Z₉: s = 2, θ = 3
        let z9 = Ring::integers_mod(3, 2).unwrap();
        assert_eq!(z9.nilpotency(), 2);
        assert_eq!(z9.theta(), z9.from_int(3));
        assert_eq!(z9.modulus(), &[0, 1]);

        assert_eq!(Ring::galois(4, 1, 1, None), Err(Error::NonPrime(4)));
        assert_eq!(
            Ring::galois(2, 2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus)
        );
        assert_eq!(Ring::chain(2, 2, 2, 2, None), Err(Error::UnsupportedExtension));
    }

    #[test]
    fn residue_map_is_a_ring_hom_onto_f4() {
        let s = gr42();
        let f4 = s.residue_field();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        let alpha = s.gen();
        let beta = alpha.residue();
        // β² = β + 1
        assert_eq!(&beta * &beta, f4.from_coords(&[1, 1]).unwrap());
        assert_eq!(s.from_int(2).residue(), f4.zero());
        assert!(s.one().residue().is_one());
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!((&x + &y).residue(), &x.residue() + &y.residue());
                assert_eq!((&x * &y).residue(), &x.residue() * &y.residue());
            }
            // kernel of π is exactly θS
            assert_eq!(x.residue().is_zero(), x.valuation() >= 1);
        }
    }

    #[test]
    fn theta_valuation() {
        let s = gr42();
        let alpha = s.gen();
        assert_eq!((&s.from_int(2) * &alpha).valuation(), 1);
        assert_eq!(s.zero().valuation(), 2);
        assert_eq!(alpha.valuation(), 0);
    }

    #[test]
    fn unit_count_and_inverse_criterion() {
        let s = gr42();
        let mut units = 0;
        for x in s.elements() {
            match x.inv() {
                Ok(y) => {
                    units += 1;
                    assert_eq!(x.valuation(), 0);
                    assert!((&x * &y).is_one());
                }
                Err(e) => {
                    assert_eq!(e, Error::NonUnit);
                    assert!(x.valuation() >= 1);
                }
            }
        }
        assert_eq!(units as u128, s.unit_count()); // (p^m − 1)·p^{m(s−1)} = 12
        assert!(s.one().inv().unwrap().is_one());
    }

    #[test]
    fn teichmuller_set_and_decomposition() {
        let z4 = Ring::integers_mod(2, 2).unwrap();
        let gamma: Vec<u64> = z4.teichmuller_set().iter().map(|g| g.coords()[0]).collect();
        assert_eq!(gamma, vec![0, 1]);
        // 3 = 1 + 2·1
        let d = z4.from_int(3).teichmuller_decompose();
        assert_eq!(d, vec![z4.one(), z4.one()]);

        let s = gr42();
        let gamma = s.teichmuller_set();
        assert_eq!(gamma.len(), 4);
        let alpha = s.gen();
        let alpha2 = &alpha * &alpha;
        assert!(gamma.contains(&s.zero()));
        assert!(gamma.contains(&s.one()));
        assert!(gamma.contains(&alpha));
        assert!(gamma.contains(&alpha2));
        // fixpoints of x ↦ x^{p^m}, closed under multiplication
        for g in &gamma {
            assert_eq!(g.pow(4), *g);
            for h in &gamma {
                assert!(gamma.contains(&(g * h)));
            }
        }
        // 3α = α + 2·α
        let d = s.from_coords(&[0, 3]).unwrap().teichmuller_decompose();
        assert_eq!(d, vec![alpha.clone(), alpha.clone()]);
        // recomposition on a full scan
        let theta = s.theta();
        for x in s.elements() {
            let digits = x.teichmuller_decompose();
            let mut acc = s.zero();
            let mut scale = s.one();
            for dt in &digits {
                assert!(gamma.contains(dt));
                acc = &acc + &(dt * &scale);
                scale = &scale * &theta;
            }
            assert_eq!(acc, x);
        }
        // in a field every element is its own Teichmüller representative
        let f4 = s.residue_field();
        assert_eq!(f4.teichmuller_set(), f4.elements());
    }

    #[test]
    fn frobenius_acts_as_squaring_on_teichmuller_coordinates() {
        let s = gr42();
        let alpha = s.gen();
        let alpha2 = &alpha * &alpha;
        assert_eq!(alpha.frobenius(1), alpha2);
        // 3α has coordinates (α, α) ↦ (α², α²) = 3α²
        let x = s.from_coords(&[0, 3]).unwrap();
        let three = s.from_int(3);
        assert_eq!(x.frobenius(1), &three * &alpha2);
        // prime subring fixed; σ bijective; σ^m = id
        let mut images = std::collections::BTreeSet::new();
        for x in s.elements() {
            let y = x.frobenius(1);
            if x.coords()[1] == 0 {
                assert_eq!(y, x);
            }
            assert_eq!(y.frobenius(1), x);
            images.insert(y);
        }
        assert_eq!(images.len(), 16);
        // σ is a ring automorphism
        for x in s.elements() {
            for y in s.elements() {
                assert_eq!((&x * &y).frobenius(1), &x.frobenius(1) * &y.frobenius(1));
                assert_eq!((&x + &y).frobenius(1), &x.frobenius(1) + &y.frobenius(1));
            }
        }
    }

    #[test]
    fn trace_and_subring() {
        let s = gr42();
        let ctx = GaloisContext::new(&s, 1).unwrap();
        assert_eq!(ctx.d, 2);
        let alpha = s.gen();
        // Tr(α) = α + α² = 3
        assert_eq!(alpha.trace(&ctx), s.from_int(3));
        assert_eq!(s.one().trace(&ctx), s.from_int(2));
        assert_eq!(s.zero().trace(&ctx), s.zero());
        assert!(s.from_int(3).in_subring(&ctx));
        assert!(!alpha.in_subring(&ctx));
        let full = GaloisContext::new(&s, 2).unwrap();
        for x in s.elements() {
            assert!(x.in_subring(&full));
            // trace lands in the fixed subring
            assert!(x.trace(&ctx).in_subring(&ctx));
        }
        assert!(GaloisContext::new(&s, 3).is_err());
    }

    #[test]
    fn trace_form_is_nondegenerate_on_gr42_over_z4() {
        let s = gr42();
        let ctx = GaloisContext::new(&s, 1).unwrap();
        for x in s.elements() {
            if x.is_zero() {
                continue;
            }
            let hit = s
                .elements()
                .into_iter()
                .any(|y| !(&x * &y).trace(&ctx).is_zero());
            assert!(hit, "trace form degenerate at {x}");
        }
    }

    #[test]
    fn element_display() {
        let s = gr42();
        assert_eq!(s.from_coords(&[3, 3]).unwrap().to_string(), "3*w+3");
        assert_eq!(s.from_coords(&[0, 1]).unwrap().to_string(), "w");
        assert_eq!(s.zero().to_string(), "0");
        assert_eq!(s.from_int(2).to_string(), "2");
    }
}
