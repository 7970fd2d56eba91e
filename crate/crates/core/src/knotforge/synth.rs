//! The full pipeline from `N` to a certified space curve.

use super::basis::{CnBasis, CnTildeBasis};
use super::deform::{auto_nodes, certify_a, solve_deformation, NodeSet};
use super::degrees;
use super::height::{lift_height, solve_height, verify_space, SpaceCurve};
use super::plane::{crossings_at, lift_plane, CrossingReport};
use crate::chebyshev::divided_difference;
use crate::error::{Error, Result};
use crate::exactpoly::Rational;

#[derive(Debug, Clone, Default)]
pub struct SynthOptions {
    /// Starting `ε` for the halving loop; `1/4` when absent.
    pub epsilon: Option<Rational>,
    /// Explicit planted nodes; used as given, without retry.
    pub nodes: Option<NodeSet>,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub curve: SpaceCurve,
    pub report: CrossingReport,
    pub nodes: NodeSet,
    /// `None` when the nodes were supplied explicitly.
    pub epsilon: Option<Rational>,
    pub halvings: u32,
}

pub fn synthesize(n_crossings: usize, opts: &SynthOptions) -> Result<Synthesis> {
    if n_crossings % 2 == 0 {
        return Err(Error::InvalidArgument(format!(
            "N must be odd and positive, got {n_crossings}"
        )));
    }
    let n = n_crossings / 2;
    let basis = CnBasis::build(n)?;
    let tilde = CnTildeBasis::from_basis(&basis)?;

    let (nodes, epsilon, halvings, deformation) = match &opts.nodes {
        Some(nodes) => {
            if nodes.n() != n {
                return Err(Error::InvalidArgument(format!(
                    "N = {n_crossings} needs {n} positive nodes, got {}",
                    nodes.n()
                )));
            }
            let d = solve_deformation(&basis, nodes)?;
            if !certify_a(&d.poly, n_crossings) {
                return Err(Error::CertificationFailed(format!(
                    "deformed A does not have exactly {n_crossings} roots in (-1, 1) and none else in [-2, 2]"
                )));
            }
            (nodes.clone(), None, 0, d)
        }
        None => {
            let c = auto_nodes(&basis, &tilde, n, opts.epsilon.clone())?;
            (c.nodes, Some(c.epsilon), c.halvings, c.deformation)
        }
    };

    let plane = lift_plane(&deformation)?;
    if divided_difference(&plane.y).to_poly() != deformation.poly {
        return Err(Error::InternalInconsistency(
            "divided difference of y differs from A".into(),
        ));
    }
    let report = crossings_at(&deformation.poly, n_crossings, Some(&nodes.all_nodes()))?;
    let height = solve_height(&tilde, &nodes)?;
    let z = lift_height(&height.poly)?;
    if divided_difference(&z).to_poly() != height.poly {
        return Err(Error::InternalInconsistency(
            "divided difference of z differs from B".into(),
        ));
    }
    let (_, want_y, want_z) = degrees(n_crossings);
    if plane.y.degree() != Some(want_y) || z.degree() != Some(want_z) {
        return Err(Error::InternalInconsistency(format!(
            "degrees (3, {:?}, {:?}), expected (3, {want_y}, {want_z})",
            plane.y.degree(),
            z.degree()
        )));
    }
    let report = verify_space(&plane.x, &plane.y, &z, Some(&nodes), report)?;
    Ok(Synthesis {
        curve: SpaceCurve {
            plane,
            z,
            b: height.b,
        },
        report,
        nodes,
        epsilon,
        halvings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::ChebT;
    use crate::exactpoly::{int, rat};

    #[test]
    fn unknot_kink() {
        let s = synthesize(1, &SynthOptions::default()).unwrap();
        assert_eq!(s.curve.plane.y, ChebT::new(vec![int(0), int(0), int(1)]));
        assert_eq!(s.report.crossings.len(), 1);
        assert_eq!(s.report.crossings[0].sign, -1);
    }

    #[test]
    fn trefoil() {
        let s = synthesize(3, &SynthOptions::default()).unwrap();
        assert_eq!(s.nodes.delta(), &[rat(1, 8)]);
        assert_eq!(s.curve.b, vec![int(1), rat(-24576, 191)]);
        let signs: Vec<i32> = s.report.crossings.iter().map(|c| c.sign).collect();
        assert_eq!(signs, vec![-1, 1, -1]);
        assert!(s.report.signs_alternate && s.report.ordering_ok);
    }

    #[test]
    fn rejects_even_and_bad_nodes() {
        assert!(matches!(
            synthesize(4, &SynthOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
        let opts = SynthOptions {
            nodes: Some(NodeSet::new(vec![rat(1, 8), rat(1, 4)]).unwrap()),
            ..Default::default()
        };
        assert!(matches!(
            synthesize(3, &opts),
            Err(Error::InvalidArgument(_))
        ));
    }
}
