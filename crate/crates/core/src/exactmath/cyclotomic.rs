//! Exact arithmetic in the cyclotomic field Q(ζ_n).
//!
//! Elements are stored as residues of Q[x] modulo the n-th cyclotomic
//! polynomial Φ_n, in the power basis 1, ζ, …, ζ^(φ(n)-1). The residue is
//! unique, so structural equality is field equality.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug)]
struct FieldData {
    conductor: u32,
    degree: usize,
    /// Φ_n, monic, lowest coefficient first.
    modulus: Vec<BigInt>,
    /// ζ^k reduced, for k in 0..n.
    powers: Vec<Vec<Rational>>,
    /// Residues k in 1..=n coprime to n (Galois group exponents).
    units: Vec<u32>,
}

/// Handle to Q(ζ_n). Cheap to clone; handles for the same conductor share data.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.conductor)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.conductor == other.0.conductor
    }
}
impl Eq for Field {}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![BigInt::zero(); num.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d, cache);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    cache.insert(n, num.clone());
    num
}

fn registry() -> &'static Mutex<HashMap<u32, Field>> {
    static REG: OnceLock<Mutex<HashMap<u32, Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// The field Q(ζ_n). Conductor 1 (and 2) is Q itself.
    pub fn new(conductor: u32) -> Result<Field> {
        if conductor == 0 {
            return Err(Error::ZeroConductor);
        }
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&conductor) {
            return Ok(f.clone());
        }
        let mut cache = HashMap::new();
        let modulus = cyclotomic_poly(conductor, &mut cache);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..conductor {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[degree - 1].clone();
            let mut next = vec![Rational::zero(); degree];
            for i in (1..degree).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, m) in modulus.iter().take(degree).enumerate() {
                    next[i] -= &top * Rational::from_integer(m.clone());
                }
            }
            cur = next;
        }
        let units = (1..=conductor).filter(|k| k.gcd(&conductor) == 1).collect();
        let f = Field(Arc::new(FieldData { conductor, degree, modulus, powers, units }));
        reg.insert(conductor, f.clone());
        Ok(f)
    }

    /// The rationals, as the conductor-1 field.
    pub fn rationals() -> Field {
        Field::new(1).expect("conductor 1 is valid")
    }

    pub fn conductor(&self) -> u32 {
        self.0.conductor
    }

    /// Degree φ(n) of the field over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> Cyclotomic {
        Cyclotomic { field: self.clone(), coeffs: vec![Rational::zero(); self.0.degree] }
    }

    pub fn one(&self) -> Cyclotomic {
        self.from_rational(Rational::one())
    }

    pub fn from_int(&self, v: i64) -> Cyclotomic {
        self.from_rational(Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Cyclotomic {
        self.from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(&self, r: Rational) -> Cyclotomic {
        let mut c = self.zero();
        c.coeffs[0] = r;
        c
    }

    /// Builds an element from power-basis coefficients, which must have length φ(n).
    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> Result<Cyclotomic> {
        if coeffs.len() != self.0.degree {
            return Err(Error::DimensionMismatch { expected: self.0.degree, found: coeffs.len() });
        }
        Ok(Cyclotomic { field: self.clone(), coeffs })
    }

    /// ζ_n^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Cyclotomic {
        let n = self.0.conductor as i64;
        let idx = k.rem_euclid(n) as usize;
        Cyclotomic { field: self.clone(), coeffs: self.0.powers[idx].clone() }
    }

    pub fn zeta(&self) -> Cyclotomic {
        self.zeta_pow(1)
    }

    /// A primitive d-th root of unity, if d divides the conductor.
    pub fn primitive_root(&self, d: u32) -> Option<Cyclotomic> {
        if d == 0 || !self.0.conductor.is_multiple_of(d) {
            return None;
        }
        Some(self.zeta_pow((self.0.conductor / d) as i64))
    }

    /// The imaginary unit, when 4 divides the conductor.
    pub fn i(&self) -> Option<Cyclotomic> {
        self.primitive_root(4)
    }

    /// All n-th roots of unity ζ^0, …, ζ^(n-1). For odd n the field also
    /// contains -ζ^k, so those are included as well.
    pub fn roots_of_unity(&self) -> Vec<Cyclotomic> {
        let n = self.0.conductor as i64;
        let mut out: Vec<Cyclotomic> = (0..n).map(|k| self.zeta_pow(k)).collect();
        if n % 2 == 1 {
            let neg: Vec<Cyclotomic> = out.iter().map(|z| -z).collect();
            out.extend(neg);
        }
        out
    }

    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let deg = self.0.degree;
        let modulus = &self.0.modulus;
        for k in (deg..poly.len()).rev() {
            let c = std::mem::take(&mut poly[k]);
            if c.is_zero() {
                continue;
            }
            for (i, m) in modulus.iter().take(deg).enumerate() {
                if !m.is_zero() {
                    poly[k - deg + i] -= &c * Rational::from_integer(m.clone());
                }
            }
        }
        poly.truncate(deg);
        poly
    }
}

/// An element of Q(ζ_n).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Field,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Cyclotomic {}

impl std::hash::Hash for Cyclotomic {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl Cyclotomic {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Cyclotomic) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::ConductorMismatch { left: self.conductor(), right: other.conductor() })
        }
    }

    fn expect_same(&self, other: &Cyclotomic) {
        if let Err(e) = self.check(other) {
            panic!("{e}");
        }
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.check(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, r: &Rational) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Image under the Galois automorphism ζ ↦ ζ^k (k coprime to n).
    pub fn galois(&self, k: u32) -> Cyclotomic {
        let n = self.conductor();
        let mut out = self.field.zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let idx = ((j as u64 * k as u64) % n as u64) as usize;
            for (o, p) in out.coeffs.iter_mut().zip(&self.field.0.powers[idx]) {
                if !p.is_zero() {
                    *o += c * p;
                }
            }
        }
        out
    }

    /// Complex conjugation, ζ ↦ ζ^(-1).
    pub fn conj(&self) -> Cyclotomic {
        let n = self.conductor();
        if n <= 2 {
            return self.clone();
        }
        self.galois(n - 1)
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let mut acc = self.field.one();
        for &k in &self.field.0.units {
            acc = &acc * &self.galois(k);
        }
        acc.as_rational().cloned().expect("norm of a cyclotomic element is rational")
    }

    pub fn inv(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(self.field.from_rational(r.recip()));
        }
        // a^{-1} = (product of the other conjugates) / N(a)
        let mut acc = self.field.one();
        for &k in &self.field.0.units {
            if k == 1 {
                continue;
            }
            acc = &acc * &self.galois(k);
        }
        let norm = (&acc * self).as_rational().cloned().expect("norm is rational");
        Ok(acc.scale(&norm.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Exact square root for rational elements: returns r with r² = self when
    /// self = ±q² for rational q (the negative case needs i in the field).
    pub fn rational_sqrt(&self) -> Option<Cyclotomic> {
        let q = self.as_rational()?;
        let root = rational_sqrt(&q.abs())?;
        if !q.is_negative() {
            Some(self.field.from_rational(root))
        } else {
            self.field.i().map(|i| i.scale(&root))
        }
    }
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Applies one of the basic field operations with conductor checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Mul,
    Inv,
    Conj,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldValue {
    Scalar(Cyclotomic),
    Bool(bool),
}

pub fn field_arith(a: &Cyclotomic, b: Option<&Cyclotomic>, op: FieldOp) -> Result<FieldValue> {
    let need_b = || b.ok_or_else(|| Error::InvalidParameter("binary operation needs two operands".into()));
    Ok(match op {
        FieldOp::Add => FieldValue::Scalar(a.try_add(need_b()?)?),
        FieldOp::Mul => FieldValue::Scalar(a.try_mul(need_b()?)?),
        FieldOp::Inv => FieldValue::Scalar(a.inv()?),
        FieldOp::Conj => FieldValue::Scalar(a.conj()),
        FieldOp::Eq => {
            let b = need_b()?;
            a.check(b)?;
            FieldValue::Bool(a == b)
        }
    })
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.expect_same(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.expect_same(rhs);
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self.expect_same(rhs);
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let deg = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.expect_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.expect_same(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match k {
                0 => c.to_string(),
                _ => {
                    let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if c.is_one() {
                        z
                    } else if *c == -Rational::one() {
                        format!("-{z}")
                    } else {
                        format!("{c}*{z}")
                    }
                }
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [n={}]", self, self.conductor())
    }
}
