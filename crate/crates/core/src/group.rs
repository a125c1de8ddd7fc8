//! The cyclic rotation group `⟨r⟩` of order `n`, where `r^k` is the plane
//! rotation by `2πk/n`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantum::{ry, SingleQubitGate};

/// Largest group order accepted unless a caller supplies its own bound.
pub const DEFAULT_MAX_ORDER: u32 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RotationGroup {
    n: u32,
}

impl RotationGroup {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_bound(n, DEFAULT_MAX_ORDER)
    }

    pub fn with_bound(n: u32, max_order: u32) -> Result<Self> {
        if n == 0 || n > max_order {
            return Err(Error::invalid(format!(
                "group order {n} outside 1..={max_order}"
            )));
        }
        Ok(Self { n })
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// `r^k` with `k` reduced into `[0, n)`.
    pub fn element(&self, k: i64) -> GroupElement {
        let n = i64::from(self.n);
        GroupElement {
            n: self.n,
            k: k.rem_euclid(n) as u32,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.element(0)
    }

    pub fn generator(&self) -> GroupElement {
        self.element(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.n).map(|k| GroupElement { n: self.n, k })
    }

    /// Checked lookup for an exponent that must already be canonical.
    pub fn exponent(&self, k: u32) -> Result<GroupElement> {
        if k >= self.n {
            return Err(Error::invalid(format!(
                "exponent {k} outside 0..{} for order {}",
                self.n, self.n
            )));
        }
        Ok(GroupElement { n: self.n, k })
    }
}

/// A rotation `r^k` in a group of order `n`, with `0 <= k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    n: u32,
    k: u32,
}

impl GroupElement {
    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn group(&self) -> RotationGroup {
        RotationGroup { n: self.n }
    }

    /// Plane rotation angle `2πk/n`, in `[0, 2π)`.
    pub fn angle(&self) -> f64 {
        2.0 * PI * f64::from(self.k) / f64::from(self.n)
    }

    /// `πk/n`, the argument that appears inside every trig term of the game.
    pub fn half_angle(&self) -> f64 {
        PI * f64::from(self.k) / f64::from(self.n)
    }

    pub fn is_identity(&self) -> bool {
        self.k == 0
    }

    /// The gate `Ry(2πk/n)` associated with this element.
    pub fn gate(&self) -> SingleQubitGate {
        ry(self.angle()).expect("group angles are finite")
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.n != other.n {
            return Err(Error::invalid(format!(
                "cannot compose elements of orders {} and {}",
                self.n, other.n
            )));
        }
        let k = (u64::from(self.k) + u64::from(other.k)) % u64::from(self.n);
        Ok(GroupElement { n: self.n, k: k as u32 })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            n: self.n,
            k: (self.n - self.k) % self.n,
        }
    }

    /// The dual exponent `(k + n/2) mod n`, defined only for even `n`.
    pub fn dual(&self) -> Result<GroupElement> {
        if !self.n.is_multiple_of(2) {
            return Err(Error::UnsupportedOrder(self.n));
        }
        Ok(GroupElement {
            n: self.n,
            k: (self.k + self.n / 2) % self.n,
        })
    }

    pub fn rotated_basis(&self) -> RotatedBasis {
        let (s, c) = self.half_angle().sin_cos();
        let change = SingleQubitGate::from_matrix([[c, s], [-s, c]])
            .expect("rotation matrices are orthogonal");
        RotatedBasis {
            element: *self,
            ket0: [c, s],
            ket1: [-s, c],
            change_matrix: change,
        }
    }
}

/// The orthonormal pair obtained by rotating the computational basis by the
/// element's half angle, together with its change-of-basis matrix (rows are
/// the two kets).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotatedBasis {
    pub element: GroupElement,
    pub ket0: [f64; 2],
    pub ket1: [f64; 2],
    pub change_matrix: SingleQubitGate,
}

pub fn element(n: u32, k: i64) -> Result<GroupElement> {
    Ok(RotationGroup::new(n)?.element(k))
}

pub fn compose(a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
    a.compose(b)
}

pub fn inverse(e: &GroupElement) -> GroupElement {
    e.inverse()
}

pub fn dual(l: &GroupElement) -> Result<GroupElement> {
    l.dual()
}

pub fn rotated_basis(e: &GroupElement) -> RotatedBasis {
    e.rotated_basis()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    const EPS: f64 = 1e-12;

    fn wrapped_angle_diff(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d)
    }

    #[test]
    fn element_reduces_exponent() {
        assert!(element(16, 0).unwrap().is_identity());
        assert_eq!(element(16, 17).unwrap().exponent(), 1);
        assert_eq!(element(16, -1).unwrap().exponent(), 15);
    }

    #[test]
    fn element_rejects_bad_orders() {
        assert!(matches!(element(0, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(element(1025, 0), Err(Error::InvalidArgument(_))));
        assert!(element(1024, 0).is_ok());
        assert!(RotationGroup::with_bound(2000, 4096).is_ok());
    }

    #[test]
    fn compose_examples() {
        let g = RotationGroup::new(16).unwrap();
        assert_eq!(g.element(3).compose(&g.element(5)).unwrap().exponent(), 8);
        assert_eq!(g.element(15).compose(&g.element(1)).unwrap().exponent(), 0);
        let e = g.element(11);
        assert!(e.compose(&e.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_mismatched_orders() {
        let a = element(16, 1).unwrap();
        let b = element(8, 1).unwrap();
        assert!(matches!(a.compose(&b), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(element(16, 0).unwrap().inverse().exponent(), 0);
        assert_eq!(element(16, 6).unwrap().inverse().exponent(), 10);
        for k in 0..16 {
            let e = element(16, k).unwrap();
            assert!(wrapped_angle_diff(e.angle() + e.inverse().angle(), 0.0) < EPS);
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(element(16, 0).unwrap().dual().unwrap().exponent(), 8);
        assert_eq!(element(16, 11).unwrap().dual().unwrap().exponent(), 3);
        for k in 0..16 {
            let l = element(16, k).unwrap();
            assert_eq!(l.dual().unwrap().dual().unwrap(), l);
        }
        assert!(matches!(
            element(15, 3).unwrap().dual(),
            Err(Error::UnsupportedOrder(15))
        ));
    }

    #[test]
    fn rotated_basis_examples() {
        let b0 = element(16, 0).unwrap().rotated_basis();
        assert!(b0.change_matrix.max_abs_diff(&SingleQubitGate::IDENTITY) < EPS);
        assert_eq!(b0.ket0, [1.0, 0.0]);

        let b8 = element(16, 8).unwrap().rotated_basis();
        assert!((b8.ket0[0]).abs() < EPS && (b8.ket0[1] - 1.0).abs() < EPS);

        for e in RotationGroup::new(16).unwrap().elements() {
            let b = e.rotated_basis();
            let product = b.change_matrix.then_after(&e.gate());
            assert!(product.max_abs_diff(&SingleQubitGate::IDENTITY) < EPS);
            assert!(b.change_matrix.max_abs_diff(&e.gate().transpose()) < EPS);
            let m = b.change_matrix.matrix();
            assert_eq!(m[0], b.ket0);
            assert_eq!(m[1], b.ket1);
        }
    }

    #[test]
    fn group_axioms_exhaustive_small_orders() {
        for n in 1..=64u32 {
            let g = RotationGroup::new(n).unwrap();
            let id = g.identity();
            for a in g.elements() {
                assert_eq!(a.compose(&id).unwrap(), a);
                assert_eq!(id.compose(&a).unwrap(), a);
                assert!(a.compose(&a.inverse()).unwrap().is_identity());
                for b in g.elements() {
                    let c = a.compose(&b).unwrap();
                    assert!(c.exponent() < n);
                    assert!(wrapped_angle_diff(c.angle(), a.angle() + b.angle()) < EPS);
                }
            }
        }
    }

    #[test]
    fn dual_is_fixed_point_free_involution_half_turn() {
        for n in (2..=64u32).step_by(2) {
            for l in RotationGroup::new(n).unwrap().elements() {
                let d = l.dual().unwrap();
                assert_ne!(d, l);
                assert_eq!(d.dual().unwrap(), l);
                let diff = wrapped_angle_diff(d.angle(), l.angle());
                assert!((diff - PI).abs() < EPS, "n={n} l={}", l.exponent());
            }
        }
    }

    #[test]
    fn rotated_bases_orthonormal() {
        for n in 1..=64u32 {
            for e in RotationGroup::new(n).unwrap().elements() {
                let b = e.rotated_basis();
                let dot = b.ket0[0] * b.ket1[0] + b.ket0[1] * b.ket1[1];
                let n0 = b.ket0[0].hypot(b.ket0[1]);
                let n1 = b.ket1[0].hypot(b.ket1[1]);
                assert!(dot.abs() < EPS && (n0 - 1.0).abs() < EPS && (n1 - 1.0).abs() < EPS);
            }
        }
    }

    proptest! {
        #[test]
        fn associativity(n in 1u32..=64, a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
            let g = RotationGroup::new(n).unwrap();
            let (a, b, c) = (g.element(a), g.element(b), g.element(c));
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn element_always_canonical(n in 1u32..=1024, k in any::<i64>()) {
            let e = RotationGroup::new(n).unwrap().element(k);
            prop_assert!(e.exponent() < n);
            prop_assert!((0.0..TAU).contains(&e.angle()));
        }
    }
}
