//! Planting the double-point abscissae: `A = C_n + Σ a_i C_i` vanishing at `0, ±δ_i`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::basis::{CnBasis, CnTildeBasis};
use super::height::solve_height;
use crate::error::{Error, Result};
use crate::exactpoly::{count_roots, format_rational, int, Poly, Rational};
use crate::linalg;

/// Positive planted abscissae `0 < δ_1 < ... < δ_n < 1`; the full node set is `{0, ±δ_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct NodeSet {
    delta: Vec<Rational>,
}

impl NodeSet {
    pub fn new(delta: Vec<Rational>) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        let ordered = delta.windows(2).all(|w| w[0] < w[1]);
        let inside = delta.iter().all(|d| d > &zero && d < &one);
        if !ordered || !inside {
            let shown: Vec<String> = delta.iter().map(format_rational).collect();
            return Err(Error::InvalidArgument(format!(
                "nodes must satisfy 0 < d_1 < ... < d_n < 1, got [{}]",
                shown.join(", ")
            )));
        }
        Ok(NodeSet { delta })
    }

    /// `δ_i = ε · i / (n+1)`.
    pub fn uniform(n: usize, epsilon: &Rational) -> Result<Self> {
        let den = int(n as i64 + 1);
        Self::new((1..=n).map(|i| epsilon * int(i as i64) / &den).collect())
    }

    pub fn n(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self) -> &[Rational] {
        &self.delta
    }

    /// `u_1 < ... < u_N`: `-δ_n, ..., -δ_1, 0, δ_1, ..., δ_n`.
    pub fn all_nodes(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self.delta.iter().rev().map(|d| -d).collect();
        out.push(Rational::zero());
        out.extend(self.delta.iter().cloned());
        out
    }
}

impl TryFrom<Vec<String>> for NodeSet {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        let delta = v
            .iter()
            .map(|s| crate::exactpoly::parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        NodeSet::new(delta)
    }
}

impl From<NodeSet> for Vec<String> {
    fn from(n: NodeSet) -> Self {
        n.delta.iter().map(format_rational).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deformation {
    /// `a_0..a_{n-1}`.
    pub a: Vec<Rational>,
    /// `A = C_n + Σ a_i C_i`.
    pub poly: Poly,
}

/// Solves the `n x n` system `Σ_i a_i C_i(δ_j) = -C_n(δ_j)`. Oddness of every `C_i`
/// makes `A` vanish at `0` and `-δ_j` as well.
pub fn solve_deformation(basis: &CnBasis, nodes: &NodeSet) -> Result<Deformation> {
    let n = nodes.n();
    if basis.n_max < n {
        return Err(Error::InvalidArgument(format!(
            "basis holds C_0..C_{}, need C_{n}",
            basis.n_max
        )));
    }
    let a = if n == 0 {
        Vec::new()
    } else {
        let rows: Vec<Vec<Rational>> = nodes
            .delta()
            .iter()
            .map(|d| (0..n).map(|i| basis.cn[i].eval(d)).collect())
            .collect();
        let rhs: Vec<Rational> = nodes.delta().iter().map(|d| -basis.cn[n].eval(d)).collect();
        linalg::solve(rows, rhs)?
    };
    let poly = a
        .iter()
        .zip(&basis.cn)
        .fold(basis.cn[n].clone(), |acc, (ai, ci)| &acc + &ci.scale(ai));
    if let Some(bad) = nodes.all_nodes().iter().find(|u| !poly.eval(u).is_zero()) {
        return Err(Error::InternalInconsistency(format!(
            "deformed polynomial does not vanish at node {}",
            format_rational(bad)
        )));
    }
    Ok(Deformation { a, poly })
}

/// True iff `A` has exactly `N` distinct roots in `(-1, 1)` and no other root in `[-2, 2]`.
pub fn certify_a(a: &Poly, n_crossings: usize) -> bool {
    if a.is_zero() {
        return false;
    }
    let (m2, m1, p1, p2) = (int(-2), int(-1), int(1), int(2));
    if a.eval(&m2).is_zero() || a.eval(&p2).is_zero() {
        return false;
    }
    matches!(
        (count_roots(a, &m2, &p2), count_roots(a, &m1, &p1)),
        (Ok(outer), Ok(inner)) if outer == n_crossings && inner == n_crossings
    )
}

pub const MAX_HALVINGS: u32 = 40;

pub fn default_epsilon() -> Rational {
    Rational::new(1.into(), 4.into())
}

#[derive(Debug, Clone)]
pub struct NodeChoice {
    pub nodes: NodeSet,
    pub epsilon: Rational,
    pub halvings: u32,
    pub deformation: Deformation,
}

/// Uniform nodes `δ_i = ε i/(n+1)`, halving `ε` until the deformation is certified and
/// the height system is nonsingular.
pub fn auto_nodes(
    basis: &CnBasis,
    tilde: &CnTildeBasis,
    n: usize,
    epsilon: Option<Rational>,
) -> Result<NodeChoice> {
    let mut eps = epsilon.unwrap_or_else(default_epsilon);
    if eps <= Rational::zero() {
        return Err(Error::InvalidArgument("epsilon must be positive".into()));
    }
    let two = int(2);
    for halvings in 0..=MAX_HALVINGS {
        if let Ok(nodes) = NodeSet::uniform(n, &eps) {
            if let Ok(deformation) = solve_deformation(basis, &nodes) {
                if certify_a(&deformation.poly, 2 * n + 1) && solve_height(tilde, &nodes).is_ok() {
                    return Ok(NodeChoice {
                        nodes,
                        epsilon: eps,
                        halvings,
                        deformation,
                    });
                }
            }
        }
        if halvings < MAX_HALVINGS {
            eps /= &two;
        }
    }
    Err(Error::EpsilonExhausted {
        halvings: MAX_HALVINGS,
        last_epsilon: format_rational(&eps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;
    use num_traits::Signed;

    #[test]
    fn node_validation() {
        assert!(NodeSet::new(vec![rat(1, 8), rat(1, 16)]).is_err());
        assert!(NodeSet::new(vec![int(0)]).is_err());
        assert!(NodeSet::new(vec![int(1)]).is_err());
        let n = NodeSet::uniform(3, &rat(1, 4)).unwrap();
        assert_eq!(n.delta(), &[rat(1, 16), rat(1, 8), rat(3, 16)]);
        assert_eq!(n.all_nodes().len(), 7);
    }

    #[test]
    fn one_node() {
        let b = CnBasis::build(1).unwrap();
        let d = solve_deformation(&b, &NodeSet::new(vec![rat(1, 8)]).unwrap()).unwrap();
        assert_eq!(d.a, vec![rat(-1, 64)]);
        assert_eq!(d.poly, Poly::new(vec![int(0), rat(-1, 64), int(0), int(1)]));
    }

    #[test]
    fn small_delta_approaches_c1() {
        let b = CnBasis::build(1).unwrap();
        let d = solve_deformation(&b, &NodeSet::new(vec![rat(1, 1 << 20)]).unwrap()).unwrap();
        assert!(d.a[0].abs() < rat(1, 1 << 30));
    }

    #[test]
    fn two_nodes() {
        let b = CnBasis::build(2).unwrap();
        let nodes = NodeSet::new(vec![rat(1, 16), rat(1, 8)]).unwrap();
        let d = solve_deformation(&b, &nodes).unwrap();
        for u in nodes.all_nodes() {
            assert!(d.poly.eval(&u).is_zero());
        }
    }

    #[test]
    fn certify_examples() {
        let a = Poly::new(vec![int(0), rat(-1, 64), int(0), int(1)]);
        assert!(certify_a(&a, 3));
        assert!(!certify_a(&Poly::from_ints(&[0, -6, 0, 1]), 3));
        assert!(certify_a(&Poly::from_ints(&[0, 0, 0, 0, 0, -6, 0, 1]), 1));
        // Roots 0, ±3/2: inside [-2, 2] but outside [-1, 1].
        assert!(!certify_a(
            &Poly::new(vec![int(0), rat(-9, 4), int(0), int(1)]),
            3
        ));
    }

    #[test]
    fn auto_nodes_first_try() {
        let b = CnBasis::build(1).unwrap();
        let t = CnTildeBasis::from_basis(&b).unwrap();
        let c = auto_nodes(&b, &t, 1, None).unwrap();
        assert_eq!(c.halvings, 0);
        assert_eq!(c.nodes.delta(), &[rat(1, 8)]);

        let b0 = CnBasis::build(0).unwrap();
        let t0 = CnTildeBasis::from_basis(&b0).unwrap();
        let c = auto_nodes(&b0, &t0, 0, None).unwrap();
        assert_eq!(c.deformation.poly, Poly::x());
    }

    #[test]
    fn auto_nodes_recovers_from_large_epsilon() {
        let b = CnBasis::build(2).unwrap();
        let t = CnTildeBasis::from_basis(&b).unwrap();
        let c = auto_nodes(&b, &t, 2, Some(int(8))).unwrap();
        // 8, 4 and 2 put a node at or beyond 1; ε = 1 gives nodes 1/3, 2/3.
        assert_eq!(c.halvings, 3);
        assert_eq!(c.epsilon, int(1));
        assert!(certify_a(&c.deformation.poly, 5));
    }
}
