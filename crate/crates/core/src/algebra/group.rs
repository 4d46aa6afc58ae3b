use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::{AlgebraError, Ring, RingElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Free abelian group on the listed symbols.
    FreeAbelian { symbols: Vec<String> },
    /// Multiplicative group of units of a finite ring.
    RingUnits(Ring),
}

/// An abelian group, written multiplicatively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup(Arc<GroupKind>);

/// Element of an [`AbelianGroup`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Exponent map with zero exponents pruned; the identity is empty.
    Free(BTreeMap<String, i64>),
    Unit(RingElement),
}

impl AbelianGroup {
    pub fn free_abelian<S: AsRef<str>>(symbols: &[S]) -> Result<Self, AlgebraError> {
        let symbols: Vec<String> = symbols.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || symbols[..i].contains(s) {
                return Err(AlgebraError::InvalidGroup(format!(
                    "invalid or duplicate symbol {s:?}"
                )));
            }
        }
        Ok(Self(Arc::new(GroupKind::FreeAbelian { symbols })))
    }

    /// Units of `ring`. Laurent rings are accepted too; their units are the signed monomials.
    pub fn ring_units(ring: Ring) -> Self {
        Self(Arc::new(GroupKind::RingUnits(ring)))
    }

    pub fn kind(&self) -> &GroupKind {
        &self.0
    }

    pub fn ring(&self) -> Option<&Ring> {
        match &*self.0 {
            GroupKind::RingUnits(r) => Some(r),
            GroupKind::FreeAbelian { .. } => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(&*self.0, GroupKind::RingUnits(r) if r.is_finite())
    }

    pub fn identity(&self) -> GroupElement {
        match &*self.0 {
            GroupKind::FreeAbelian { .. } => GroupElement::Free(BTreeMap::new()),
            GroupKind::RingUnits(r) => GroupElement::Unit(r.one()),
        }
    }

    /// The generator named `symbol` of a free abelian group.
    pub fn generator(&self, symbol: &str) -> Result<GroupElement, AlgebraError> {
        self.word(&[(symbol, 1)])
    }

    /// `prod symbol^exp` in a free abelian group.
    pub fn word(&self, powers: &[(&str, i64)]) -> Result<GroupElement, AlgebraError> {
        match &*self.0 {
            GroupKind::FreeAbelian { symbols } => {
                let mut m = BTreeMap::new();
                for (s, e) in powers {
                    if !symbols.iter().any(|x| x == s) {
                        return Err(AlgebraError::UnknownSymbol(s.to_string()));
                    }
                    *m.entry(s.to_string()).or_insert(0) += e;
                }
                m.retain(|_, e| *e != 0);
                Ok(GroupElement::Free(m))
            }
            GroupKind::RingUnits(_) => Err(AlgebraError::WrongKind(
                "ring-unit groups have no named generators".into(),
            )),
        }
    }

    /// Wraps a ring element as a unit of this group.
    pub fn unit(&self, x: RingElement) -> Result<GroupElement, AlgebraError> {
        let el = GroupElement::Unit(x);
        self.check_member(&el)?;
        Ok(el)
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.check_member(x).is_ok()
    }

    fn check_member(&self, x: &GroupElement) -> Result<(), AlgebraError> {
        match (&*self.0, x) {
            (GroupKind::FreeAbelian { symbols }, GroupElement::Free(m)) => {
                match m.keys().find(|k| !symbols.contains(k)) {
                    Some(k) => Err(AlgebraError::UnknownSymbol(k.clone())),
                    None => Ok(()),
                }
            }
            (GroupKind::RingUnits(r), GroupElement::Unit(u)) => {
                if u.ring() != r {
                    Err(AlgebraError::RingMismatch {
                        left: r.to_string(),
                        right: u.ring().to_string(),
                    })
                } else if !u.is_unit() {
                    Err(AlgebraError::NotAUnit(u.to_string()))
                } else {
                    Ok(())
                }
            }
            _ => Err(AlgebraError::GroupMismatch),
        }
    }

    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, AlgebraError> {
        self.check_member(x)?;
        self.check_member(y)?;
        Ok(match (x, y) {
            (GroupElement::Free(a), GroupElement::Free(b)) => {
                let mut m = a.clone();
                for (s, e) in b {
                    *m.entry(s.clone()).or_insert(0) += e;
                }
                m.retain(|_, e| *e != 0);
                GroupElement::Free(m)
            }
            (GroupElement::Unit(a), GroupElement::Unit(b)) => GroupElement::Unit(a * b),
            _ => unreachable!(),
        })
    }

    pub fn inverse(&self, x: &GroupElement) -> Result<GroupElement, AlgebraError> {
        self.pow(x, -1)
    }

    pub fn pow(&self, x: &GroupElement, k: i64) -> Result<GroupElement, AlgebraError> {
        self.check_member(x)?;
        Ok(match x {
            GroupElement::Free(a) => {
                let mut m: BTreeMap<String, i64> =
                    a.iter().map(|(s, e)| (s.clone(), e * k)).collect();
                m.retain(|_, e| *e != 0);
                GroupElement::Free(m)
            }
            GroupElement::Unit(u) => GroupElement::Unit(u.pow(k).expect("member is a unit")),
        })
    }

    /// Product of a sequence, starting from the identity.
    pub fn product<'a>(
        &self,
        items: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<GroupElement, AlgebraError> {
        items
            .into_iter()
            .try_fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// All elements, for finite groups.
    pub fn elements(&self) -> Result<Vec<GroupElement>, AlgebraError> {
        match &*self.0 {
            GroupKind::RingUnits(r) => Ok(r.units()?.into_iter().map(GroupElement::Unit).collect()),
            GroupKind::FreeAbelian { .. } => Err(AlgebraError::InfiniteGroup),
        }
    }
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Free(m) => m.is_empty(),
            GroupElement::Unit(u) => u.is_one(),
        }
    }

    pub fn as_unit(&self) -> Option<&RingElement> {
        match self {
            GroupElement::Unit(u) => Some(u),
            GroupElement::Free(_) => None,
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Unit(u) => write!(f, "{u}"),
            GroupElement::Free(m) if m.is_empty() => write!(f, "1"),
            GroupElement::Free(m) => {
                let parts: Vec<String> = m
                    .iter()
                    .map(|(s, e)| if *e == 1 { s.clone() } else { format!("{s}^{e}") })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
        }
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            GroupKind::FreeAbelian { symbols } => write!(f, "free abelian on {{{}}}", symbols.join(", ")),
            GroupKind::RingUnits(r) => write!(f, "units of {r}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_abelian_arithmetic() {
        let g = AbelianGroup::free_abelian(&["a", "b"]).unwrap();
        let a = g.generator("a").unwrap();
        let b = g.generator("b").unwrap();
        let ab = g.mul(&a, &b).unwrap();
        assert_eq!(ab, g.word(&[("a", 1), ("b", 1)]).unwrap());
        assert_eq!(ab.to_string(), "a*b");
        let inv = g.pow(&ab, -1).unwrap();
        assert_eq!(inv, g.word(&[("a", -1), ("b", -1)]).unwrap());
        assert!(g.mul(&ab, &inv).unwrap().is_identity());
    }

    #[test]
    fn ring_units_arithmetic() {
        let z5 = Ring::modular(5).unwrap();
        let g = AbelianGroup::ring_units(z5.clone());
        let x = g.unit(z5.int(2)).unwrap();
        let y = g.unit(z5.int(3)).unwrap();
        assert!(g.mul(&x, &y).unwrap().is_identity());
        assert!(g.unit(z5.int(0)).is_err());
        assert_eq!(g.elements().unwrap().len(), 4);
    }

    #[test]
    fn mixed_groups_rejected() {
        let g = AbelianGroup::free_abelian(&["a"]).unwrap();
        let h = AbelianGroup::free_abelian(&["b"]).unwrap();
        let b = h.generator("b").unwrap();
        assert!(g.mul(&g.identity(), &b).is_err());
        let z5 = AbelianGroup::ring_units(Ring::modular(5).unwrap());
        assert!(matches!(
            z5.mul(&z5.identity(), &g.identity()),
            Err(AlgebraError::GroupMismatch)
        ));
    }
}
