use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::AlgebraError;

/// Exponent vector of a Laurent monomial, ordered like the ring's variable list.
pub type Exponents = Vec<i64>;

/// The three families of coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingKind {
    /// `Z_n`.
    Modular { n: u64 },
    /// `Z_m[t] / (f)` with `f` monic, coefficients ascending.
    Quotient { modulus: u64, poly: Vec<u64> },
    /// `Z[v_1^{±1}, ..., v_k^{±1}]`.
    Laurent { vars: Vec<String> },
}

/// A commutative ring with unity. Cheap to clone; compared by value.
#[derive(Clone)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl PartialOrd for Ring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::Modular { n } => write!(f, "Z_{n}"),
            RingKind::Quotient { modulus, poly } => {
                let p = format_poly(&poly.iter().map(|&c| c as i64).collect::<Vec<_>>());
                write!(f, "Z_{modulus}[t]/({p})")
            }
            RingKind::Laurent { vars } => {
                let vs: Vec<String> = vars.iter().map(|v| format!("{v}^±1")).collect();
                write!(f, "Z[{}]", vs.join(", "))
            }
        }
    }
}

/// Canonical payload of a ring element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    /// Residue in `[0, n)`.
    Mod(u64),
    /// Ascending coefficients, trailing zeros trimmed (zero is empty).
    Poly(Vec<u64>),
    /// Nonzero terms keyed by exponent vector; zero is the empty map.
    Laurent(BTreeMap<Exponents, i64>),
}

/// An element of a [`Ring`], always in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.value
            .cmp(&other.value)
            .then_with(|| self.ring.cmp(&other.ring))
    }
}

impl Ring {
    pub fn modular(n: u64) -> Result<Ring, AlgebraError> {
        if n < 2 {
            return Err(AlgebraError::InvalidRing(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        Ok(Ring(Arc::new(RingKind::Modular { n })))
    }

    /// `Z_modulus[t] / (poly)`, with `poly` given by ascending coefficients.
    pub fn quotient(modulus: u64, poly: &[i64]) -> Result<Ring, AlgebraError> {
        if modulus < 2 {
            return Err(AlgebraError::InvalidRing(format!(
                "base modulus must be at least 2, got {modulus}"
            )));
        }
        let mut p: Vec<u64> = poly.iter().map(|&c| reduce_i64(c, modulus)).collect();
        while p.last() == Some(&0) {
            p.pop();
        }
        if p.len() < 2 {
            return Err(AlgebraError::InvalidRing(
                "modulus polynomial must have degree at least 1".into(),
            ));
        }
        if *p.last().unwrap() != 1 {
            return Err(AlgebraError::InvalidRing(
                "modulus polynomial must be monic".into(),
            ));
        }
        Ok(Ring(Arc::new(RingKind::Quotient { modulus, poly: p })))
    }

    pub fn laurent<S: AsRef<str>>(vars: &[S]) -> Result<Ring, AlgebraError> {
        if vars.is_empty() {
            return Err(AlgebraError::InvalidRing(
                "laurent ring needs at least one variable".into(),
            ));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(AlgebraError::InvalidRing(format!(
                    "invalid or duplicate variable {v:?}"
                )));
            }
        }
        Ok(Ring(Arc::new(RingKind::Laurent { vars })))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// Number of elements, or `None` for Laurent rings.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            RingKind::Modular { n } => Some(*n),
            RingKind::Quotient { modulus, poly } => {
                modulus.checked_pow((poly.len() - 1) as u32)
            }
            RingKind::Laurent { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, RingKind::Laurent { .. })
    }

    fn element(&self, value: Value) -> RingElement {
        RingElement {
            ring: self.clone(),
            value,
        }
    }

    pub fn zero(&self) -> RingElement {
        match &*self.0 {
            RingKind::Modular { .. } => self.element(Value::Mod(0)),
            RingKind::Quotient { .. } => self.element(Value::Poly(Vec::new())),
            RingKind::Laurent { .. } => self.element(Value::Laurent(BTreeMap::new())),
        }
    }

    pub fn one(&self) -> RingElement {
        self.int(1)
    }

    /// Image of an integer under the unique ring map from `Z`.
    pub fn int(&self, k: i64) -> RingElement {
        match &*self.0 {
            RingKind::Modular { n } => self.element(Value::Mod(reduce_i64(k, *n))),
            RingKind::Quotient { modulus, .. } => {
                let c = reduce_i64(k, *modulus);
                self.element(Value::Poly(if c == 0 { vec![] } else { vec![c] }))
            }
            RingKind::Laurent { vars } => {
                let mut terms = BTreeMap::new();
                if k != 0 {
                    terms.insert(vec![0; vars.len()], k);
                }
                self.element(Value::Laurent(terms))
            }
        }
    }

    /// Polynomial in the generator `t` of a quotient ring (ascending coefficients).
    pub fn poly(&self, coeffs: &[i64]) -> Result<RingElement, AlgebraError> {
        match &*self.0 {
            RingKind::Quotient { modulus, poly } => {
                let c: Vec<u64> = coeffs.iter().map(|&c| reduce_i64(c, *modulus)).collect();
                Ok(self.element(Value::Poly(poly_reduce(c, poly, *modulus))))
            }
            _ => Err(AlgebraError::WrongKind(format!(
                "{self} has no polynomial generator"
            ))),
        }
    }

    /// Laurent monomial `coeff * prod v^e`; variables not listed get exponent 0.
    pub fn monomial(&self, coeff: i64, powers: &[(&str, i64)]) -> Result<RingElement, AlgebraError> {
        match &*self.0 {
            RingKind::Laurent { vars } => {
                let mut exps = vec![0; vars.len()];
                for (name, e) in powers {
                    let i = vars.iter().position(|v| v == name).ok_or_else(|| {
                        AlgebraError::UnknownSymbol(name.to_string())
                    })?;
                    exps[i] += e;
                }
                let mut terms = BTreeMap::new();
                if coeff != 0 {
                    terms.insert(exps, coeff);
                }
                Ok(self.element(Value::Laurent(terms)))
            }
            _ => Err(AlgebraError::WrongKind(format!("{self} is not a laurent ring"))),
        }
    }

    /// A Laurent variable as an element.
    pub fn var(&self, name: &str) -> Result<RingElement, AlgebraError> {
        self.monomial(1, &[(name, 1)])
    }

    /// Builds an element from raw Laurent terms, dropping zeros and merging repeats.
    pub fn laurent_from_terms(
        &self,
        terms: impl IntoIterator<Item = (Exponents, i64)>,
    ) -> Result<RingElement, AlgebraError> {
        match &*self.0 {
            RingKind::Laurent { vars } => {
                let mut map: BTreeMap<Exponents, i64> = BTreeMap::new();
                for (e, c) in terms {
                    if e.len() != vars.len() {
                        return Err(AlgebraError::WrongKind(format!(
                            "exponent vector of length {} in a ring with {} variables",
                            e.len(),
                            vars.len()
                        )));
                    }
                    *map.entry(e).or_insert(0) += c;
                }
                map.retain(|_, c| *c != 0);
                Ok(self.element(Value::Laurent(map)))
            }
            _ => Err(AlgebraError::WrongKind(format!("{self} is not a laurent ring"))),
        }
    }

    /// Enumeration index `k -> element`, for finite rings.
    ///
    /// Quotient elements are numbered by reading the coefficient vector as
    /// base-`m` digits, least significant first.
    pub fn element_at(&self, index: u64) -> Option<RingElement> {
        let size = self.size()?;
        if index >= size {
            return None;
        }
        Some(match &*self.0 {
            RingKind::Modular { .. } => self.element(Value::Mod(index)),
            RingKind::Quotient { modulus, poly } => {
                let mut digits = Vec::with_capacity(poly.len() - 1);
                let mut k = index;
                for _ in 0..poly.len() - 1 {
                    digits.push(k % modulus);
                    k /= modulus;
                }
                while digits.last() == Some(&0) {
                    digits.pop();
                }
                self.element(Value::Poly(digits))
            }
            RingKind::Laurent { .. } => unreachable!(),
        })
    }

    /// All elements of a finite ring in enumeration order.
    pub fn elements(&self) -> Result<Vec<RingElement>, AlgebraError> {
        let size = self.size().ok_or(AlgebraError::InfiniteRing)?;
        Ok((0..size).map(|k| self.element_at(k).unwrap()).collect())
    }

    /// The unit group of a finite ring, in enumeration order.
    pub fn units(&self) -> Result<Vec<RingElement>, AlgebraError> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| x.inverse().is_some())
            .collect())
    }

    /// Finite rings: exhaustive zero-divisor scan. Laurent rings over `Z`: always.
    pub fn is_integral_domain(&self) -> bool {
        let Ok(elems) = self.elements() else {
            return true;
        };
        let nonzero: Vec<_> = elems.into_iter().filter(|x| !x.is_zero()).collect();
        nonzero
            .iter()
            .enumerate()
            .all(|(i, x)| nonzero[i..].iter().all(|y| !(x * y).is_zero()))
    }

    /// Laurent variable names; empty for finite rings.
    pub fn variables(&self) -> &[String] {
        match &*self.0 {
            RingKind::Laurent { vars } => vars,
            _ => &[],
        }
    }
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Mod(r) => *r == 0,
            Value::Poly(c) => c.is_empty(),
            Value::Laurent(t) => t.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    fn check_same(&self, other: &RingElement) -> Result<(), AlgebraError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        self.check_same(other)?;
        let value = match (&self.value, &other.value, self.ring.kind()) {
            (Value::Mod(a), Value::Mod(b), RingKind::Modular { n }) => {
                Value::Mod(((*a as u128 + *b as u128) % *n as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b), RingKind::Quotient { modulus, .. }) => {
                let len = a.len().max(b.len());
                let mut c: Vec<u64> = (0..len)
                    .map(|i| {
                        let s = a.get(i).copied().unwrap_or(0) as u128
                            + b.get(i).copied().unwrap_or(0) as u128;
                        (s % *modulus as u128) as u64
                    })
                    .collect();
                trim(&mut c);
                Value::Poly(c)
            }
            (Value::Laurent(a), Value::Laurent(b), RingKind::Laurent { .. }) => {
                let mut c = a.clone();
                for (e, k) in b {
                    *c.entry(e.clone()).or_insert(0) += k;
                }
                c.retain(|_, k| *k != 0);
                Value::Laurent(c)
            }
            _ => unreachable!("element payload does not match its ring"),
        };
        Ok(self.ring.element(value))
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        self.try_add(&other.neg_elem())
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, AlgebraError> {
        self.check_same(other)?;
        let value = match (&self.value, &other.value, self.ring.kind()) {
            (Value::Mod(a), Value::Mod(b), RingKind::Modular { n }) => {
                Value::Mod(((*a as u128 * *b as u128) % *n as u128) as u64)
            }
            (Value::Poly(a), Value::Poly(b), RingKind::Quotient { modulus, poly }) => {
                if a.is_empty() || b.is_empty() {
                    Value::Poly(Vec::new())
                } else {
                    let m = *modulus as u128;
                    let mut c = vec![0u128; a.len() + b.len() - 1];
                    for (i, &x) in a.iter().enumerate() {
                        for (j, &y) in b.iter().enumerate() {
                            c[i + j] = (c[i + j] + x as u128 * y as u128) % m;
                        }
                    }
                    let c = c.into_iter().map(|v| v as u64).collect();
                    Value::Poly(poly_reduce(c, poly, *modulus))
                }
            }
            (Value::Laurent(a), Value::Laurent(b), RingKind::Laurent { .. }) => {
                let mut c: BTreeMap<Exponents, i64> = BTreeMap::new();
                for (ea, ka) in a {
                    for (eb, kb) in b {
                        let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                        *c.entry(e).or_insert(0) += ka * kb;
                    }
                }
                c.retain(|_, k| *k != 0);
                Value::Laurent(c)
            }
            _ => unreachable!("element payload does not match its ring"),
        };
        Ok(self.ring.element(value))
    }

    fn neg_elem(&self) -> RingElement {
        let value = match (&self.value, self.ring.kind()) {
            (Value::Mod(a), RingKind::Modular { n }) => Value::Mod((n - a) % n),
            (Value::Poly(a), RingKind::Quotient { modulus, .. }) => {
                let mut c: Vec<u64> = a.iter().map(|&x| (modulus - x) % modulus).collect();
                trim(&mut c);
                Value::Poly(c)
            }
            (Value::Laurent(a), RingKind::Laurent { .. }) => {
                Value::Laurent(a.iter().map(|(e, k)| (e.clone(), -k)).collect())
            }
            _ => unreachable!("element payload does not match its ring"),
        };
        self.ring.element(value)
    }

    /// Multiplicative inverse, or `None` when the element is not a unit.
    pub fn inverse(&self) -> Option<RingElement> {
        match (&self.value, self.ring.kind()) {
            (Value::Mod(a), RingKind::Modular { n }) => {
                mod_inverse(*a, *n).map(|r| self.ring.element(Value::Mod(r)))
            }
            (Value::Poly(_), RingKind::Quotient { .. }) => {
                let one = self.ring.one();
                let size = self.ring.size()?;
                (0..size)
                    .map(|k| self.ring.element_at(k).unwrap())
                    .find(|y| (self * y) == one)
            }
            (Value::Laurent(t), RingKind::Laurent { .. }) => {
                if t.len() != 1 {
                    return None;
                }
                let (e, k) = t.iter().next().unwrap();
                if k.abs() != 1 {
                    return None;
                }
                let mut inv = BTreeMap::new();
                inv.insert(e.iter().map(|x| -x).collect(), *k);
                Some(self.ring.element(Value::Laurent(inv)))
            }
            _ => unreachable!("element payload does not match its ring"),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow(&self, k: i64) -> Option<RingElement> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.ring.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    /// Index in [`Ring::element_at`] order, for finite rings.
    pub fn index(&self) -> Option<u64> {
        match (&self.value, self.ring.kind()) {
            (Value::Mod(a), _) => Some(*a),
            (Value::Poly(c), RingKind::Quotient { modulus, .. }) => {
                Some(c.iter().rev().fold(0u64, |acc, &d| acc * modulus + d))
            }
            _ => None,
        }
    }

    /// Laurent terms as (exponents, coefficient); empty for other rings.
    pub fn laurent_terms(&self) -> Vec<(Exponents, i64)> {
        match &self.value {
            Value::Laurent(t) => t.iter().map(|(e, k)| (e.clone(), *k)).collect(),
            _ => Vec::new(),
        }
    }

    /// Substitutes `var -> var^{-1}` in a Laurent element.
    pub fn invert_variables(&self) -> RingElement {
        match &self.value {
            Value::Laurent(t) => self.ring.element(Value::Laurent(
                t.iter()
                    .map(|(e, k)| (e.iter().map(|x| -x).collect(), *k))
                    .collect(),
            )),
            _ => self.clone(),
        }
    }

    /// Re-normalizes the payload; elements are always canonical, so this is the identity.
    pub fn canonical(&self) -> RingElement {
        match (&self.value, self.ring.kind()) {
            (Value::Mod(a), RingKind::Modular { n }) => self.ring.element(Value::Mod(a % n)),
            (Value::Poly(c), RingKind::Quotient { modulus, poly }) => {
                let c = c.iter().map(|&x| x % modulus).collect();
                self.ring.element(Value::Poly(poly_reduce(c, poly, *modulus)))
            }
            (Value::Laurent(t), _) => {
                let mut t = t.clone();
                t.retain(|_, k| *k != 0);
                self.ring.element(Value::Laurent(t))
            }
            _ => self.clone(),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RingElement> for &RingElement {
            type Output = RingElement;
            /// Panics on mixed-ring operands; use the `try_` form to get an error instead.
            fn $method(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait<RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                (&self).$checked(&rhs).expect("ring mismatch")
            }
        }
        impl $trait<&RingElement> for RingElement {
            type Output = RingElement;
            fn $method(self, rhs: &RingElement) -> RingElement {
                (&self).$checked(rhs).expect("ring mismatch")
            }
        }
        impl $trait<RingElement> for &RingElement {
            type Output = RingElement;
            fn $method(self, rhs: RingElement) -> RingElement {
                self.$checked(&rhs).expect("ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_elem()
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.neg_elem()
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Mod(a) => write!(f, "{a}"),
            Value::Poly(c) => {
                write!(f, "{}", format_poly(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            }
            Value::Laurent(t) => {
                if t.is_empty() {
                    return write!(f, "0");
                }
                let vars = self.ring.variables();
                let mut out = String::new();
                for (i, (e, k)) in t.iter().enumerate() {
                    let mono: Vec<String> = e
                        .iter()
                        .zip(vars)
                        .filter(|(x, _)| **x != 0)
                        .map(|(x, v)| if *x == 1 { v.clone() } else { format!("{v}^{x}") })
                        .collect();
                    let mag = k.unsigned_abs();
                    let body = match (mono.is_empty(), mag) {
                        (true, _) => mag.to_string(),
                        (false, 1) => mono.join("*"),
                        (false, _) => format!("{mag}*{}", mono.join("*")),
                    };
                    match (i, *k < 0) {
                        (0, true) => out.push_str(&format!("-{body}")),
                        (0, false) => out.push_str(&body),
                        (_, true) => out.push_str(&format!(" - {body}")),
                        (_, false) => out.push_str(&format!(" + {body}")),
                    }
                }
                write!(f, "{out}")
            }
        }
    }
}

fn reduce_i64(k: i64, n: u64) -> u64 {
    (k as i128).rem_euclid(n as i128) as u64
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Long division by the monic `modulus_poly`, coefficients already reduced mod `m`.
fn poly_reduce(mut c: Vec<u64>, modulus_poly: &[u64], m: u64) -> Vec<u64> {
    let d = modulus_poly.len() - 1;
    let m128 = m as u128;
    while c.len() > d {
        let top = c.len() - 1;
        let lead = c[top] as u128;
        if lead != 0 {
            for (i, &f) in modulus_poly.iter().enumerate().take(d) {
                let idx = top - d + i;
                let sub = (lead * f as u128) % m128;
                c[idx] = ((c[idx] as u128 + m128 - sub) % m128) as u64;
            }
        }
        c.pop();
    }
    trim(&mut c);
    c
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
}

fn format_poly(c: &[i64]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| {
            let mono = match i {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{i}"),
            };
            match (i, k) {
                (0, _) => k.to_string(),
                (_, 1) => mono,
                _ => format!("{k}{mono}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}
