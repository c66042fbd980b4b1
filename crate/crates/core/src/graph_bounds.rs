//! Spectral-radius bounds for the four graph matrices.
//!
//! Each bound is the generic scale-vector bound applied with an `alpha`-power
//! scale vector: degrees `d_i^alpha` for the adjacency and signless Laplacian
//! matrices, transmissions `T_i^alpha` for the distance and distance signless
//! Laplacian matrices. At `alpha = 0` the scale vector is all ones and the
//! classical degree / transmission bounds come out; at `alpha = 1` the scaled
//! row sums are the average degrees / average transmissions.
//!
//! Upper bounds are indexed by rank in the descending order of the scaled row
//! sums, not by vertex label.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundEvaluator, BoundReport, ScaleVector};
use crate::error::{BoundsError, MatrixError};
use crate::graph::{power, Graph, TransmissionData};
use crate::matrix::{spectral_radius_with, IrreducibleMatrix, OracleConfig, SpectralEstimate};

/// Graph matrix a bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MatrixKind {
    #[serde(rename = "adj")]
    Adjacency,
    #[serde(rename = "q")]
    SignlessLaplacian,
    #[serde(rename = "dist")]
    Distance,
    #[serde(rename = "dq")]
    DistanceSignlessLaplacian,
}

impl MatrixKind {
    pub const ALL: [MatrixKind; 4] = [
        MatrixKind::Adjacency,
        MatrixKind::SignlessLaplacian,
        MatrixKind::Distance,
        MatrixKind::DistanceSignlessLaplacian,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adj",
            MatrixKind::SignlessLaplacian => "q",
            MatrixKind::Distance => "dist",
            MatrixKind::DistanceSignlessLaplacian => "dq",
        }
    }

    /// Distance-based kinds scale by transmissions, the others by degrees.
    pub fn is_distance_based(self) -> bool {
        matches!(self, MatrixKind::Distance | MatrixKind::DistanceSignlessLaplacian)
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "adj" | "adjacency" => Ok(MatrixKind::Adjacency),
            "q" | "signless-laplacian" => Ok(MatrixKind::SignlessLaplacian),
            "dist" | "distance" => Ok(MatrixKind::Distance),
            "dq" | "distance-signless-laplacian" => Ok(MatrixKind::DistanceSignlessLaplacian),
            other => Err(format!("unknown matrix kind {other:?}")),
        }
    }
}

/// Bound evaluation for one graph. Matrices are built eagerly; the oracle runs
/// at most once per kind, on first use.
#[derive(Debug)]
pub struct GraphBounds<'g> {
    graph: &'g Graph,
    transmission: TransmissionData,
    matrices: [IrreducibleMatrix; 4],
    oracle: OracleConfig,
    spectra: [OnceLock<Result<SpectralEstimate, MatrixError>>; 4],
}

impl<'g> GraphBounds<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        Self::with_oracle(graph, OracleConfig::default())
    }

    pub fn with_oracle(graph: &'g Graph, oracle: OracleConfig) -> Self {
        let transmission = graph.distance_data();
        let matrices = [
            graph.adjacency_matrix(),
            graph.signless_laplacian(),
            transmission.distance_matrix(),
            transmission.distance_signless_laplacian(),
        ];
        Self {
            graph,
            transmission,
            matrices,
            oracle,
            spectra: Default::default(),
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn transmission(&self) -> &TransmissionData {
        &self.transmission
    }

    pub fn matrix(&self, kind: MatrixKind) -> &IrreducibleMatrix {
        &self.matrices[kind.slot()]
    }

    pub fn spectral_estimate(&self, kind: MatrixKind) -> Result<&SpectralEstimate, BoundsError> {
        self.spectra[kind.slot()]
            .get_or_init(|| spectral_radius_with(self.matrix(kind), &self.oracle))
            .as_ref()
            .map_err(|e| BoundsError::Oracle(e.clone()))
    }

    pub fn rho(&self, kind: MatrixKind) -> Result<f64, BoundsError> {
        Ok(self.spectral_estimate(kind)?.rho)
    }

    /// `(d_i^alpha)` or `(T_i^alpha)` depending on the kind.
    pub fn scale_vector(&self, kind: MatrixKind, alpha: f64) -> ScaleVector {
        let base: Vec<f64> = if kind.is_distance_based() {
            self.transmission
                .transmissions
                .iter()
                .map(|&t| t as f64)
                .collect()
        } else {
            self.graph.degrees().into_iter().map(|d| d as f64).collect()
        };
        ScaleVector::new(base.into_iter().map(|b| power(b, alpha)).collect())
            .expect("degrees and transmissions of a connected graph are positive")
    }

    pub fn evaluator(&self, kind: MatrixKind, alpha: f64) -> Result<BoundEvaluator<'_>, BoundsError> {
        BoundEvaluator::with_rho(self.matrix(kind), self.scale_vector(kind, alpha), self.rho(kind)?)
    }

    /// Upper bound for `kind` at rank `i` with exponent `alpha`.
    pub fn upper(&self, kind: MatrixKind, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
        let mut r = self.evaluator(kind, alpha)?.upper(i)?;
        r.alpha = Some(alpha);
        Ok(r)
    }

    pub fn best_upper(&self, kind: MatrixKind, alpha: f64) -> Result<BoundReport, BoundsError> {
        let mut r = self.evaluator(kind, alpha)?.best_upper()?;
        r.alpha = Some(alpha);
        Ok(r)
    }

    /// Lower bound for `kind`. The distance kinds use the transmission-power
    /// scale vector; the adjacency and signless Laplacian kinds fall back to
    /// the row-sum bound, which does not depend on `alpha`.
    pub fn lower(&self, kind: MatrixKind, alpha: f64) -> Result<BoundReport, BoundsError> {
        let scale = if kind.is_distance_based() {
            self.scale_vector(kind, alpha)
        } else {
            ScaleVector::ones(self.graph.order())
        };
        let mut r = BoundEvaluator::with_rho(self.matrix(kind), scale, self.rho(kind)?)?.lower();
        r.alpha = Some(alpha);
        Ok(r)
    }

    pub fn adjacency_upper(&self, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
        self.upper(MatrixKind::Adjacency, alpha, i)
    }

    /// Average-degree bound (`alpha = 1`).
    pub fn adjacency_upper_avg(&self, i: usize) -> Result<BoundReport, BoundsError> {
        self.adjacency_upper(1.0, i)
    }

    pub fn signless_upper(&self, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
        self.upper(MatrixKind::SignlessLaplacian, alpha, i)
    }

    pub fn distance_upper(&self, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
        self.upper(MatrixKind::Distance, alpha, i)
    }

    /// Average-transmission bound (`alpha = 1`).
    pub fn distance_upper_avg(&self, i: usize) -> Result<BoundReport, BoundsError> {
        self.distance_upper(1.0, i)
    }

    pub fn distance_lower(&self, alpha: f64) -> Result<BoundReport, BoundsError> {
        self.lower(MatrixKind::Distance, alpha)
    }

    pub fn dsl_upper(&self, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
        self.upper(MatrixKind::DistanceSignlessLaplacian, alpha, i)
    }

    pub fn dsl_lower(&self, alpha: f64) -> Result<BoundReport, BoundsError> {
        self.lower(MatrixKind::DistanceSignlessLaplacian, alpha)
    }
}

pub fn adjacency_upper(g: &Graph, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).adjacency_upper(alpha, i)
}

pub fn adjacency_upper_avg(g: &Graph, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).adjacency_upper_avg(i)
}

pub fn signless_upper(g: &Graph, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).signless_upper(alpha, i)
}

pub fn distance_upper(g: &Graph, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).distance_upper(alpha, i)
}

pub fn distance_upper_avg(g: &Graph, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).distance_upper_avg(i)
}

pub fn distance_lower(g: &Graph, alpha: f64) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).distance_lower(alpha)
}

pub fn dsl_upper(g: &Graph, alpha: f64, i: usize) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).dsl_upper(alpha, i)
}

pub fn dsl_lower(g: &Graph, alpha: f64) -> Result<BoundReport, BoundsError> {
    GraphBounds::new(g).dsl_lower(alpha)
}

/// Graph families that appear in the equality characterizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructuralClass {
    Complete,
    Regular,
    /// Average neighbor degree constant, degrees not.
    PseudoRegular,
    TransmissionRegular,
    /// `d_1 = n - 1 > d_2 = ... = d_n`.
    StarLike,
    /// `d_1 = ... = d_{t-1} = n - 1 > d_t = ... = d_n` with `t >= 3`.
    Bidegreed {
        t: usize,
    },
    None,
}

/// Structural class of a graph relative to one bound family, and whether
/// the class belongs to that family's stated equality cases for `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralAssessment {
    pub class: StructuralClass,
    pub matches_theorem: bool,
}

/// Classifies `g` for the bound family of `kind` at exponent `alpha`.
///
/// Degree-based kinds test complete, regular, pseudo-regular, star-like and
/// bidegreed-with-dominating-vertices in that order; distance-based kinds test
/// complete and transmission-regular. For `alpha < 0` only the all-equal
/// classes (complete, regular) count as equality cases.
pub fn structural_equality_class(g: &Graph, alpha: f64, kind: MatrixKind) -> StructuralAssessment {
    let n = g.order();
    let degrees = g.degrees();
    let class = if degrees.iter().all(|&d| d == n - 1) {
        StructuralClass::Complete
    } else if kind.is_distance_based() {
        let tr = g.distance_data().transmissions;
        if tr.iter().all(|&t| t == tr[0]) {
            StructuralClass::TransmissionRegular
        } else {
            StructuralClass::None
        }
    } else if degrees.iter().all(|&d| d == degrees[0]) {
        StructuralClass::Regular
    } else if is_pseudo_regular(g) {
        StructuralClass::PseudoRegular
    } else {
        dominating_pattern(&degrees)
    };

    let matches_theorem = match class {
        StructuralClass::Complete | StructuralClass::Regular | StructuralClass::TransmissionRegular => true,
        StructuralClass::PseudoRegular => kind == MatrixKind::Adjacency && alpha == 1.0,
        StructuralClass::StarLike => alpha >= 0.0,
        StructuralClass::Bidegreed { .. } => alpha == 0.0,
        StructuralClass::None => false,
    };
    StructuralAssessment {
        class,
        matches_theorem,
    }
}

fn is_pseudo_regular(g: &Graph) -> bool {
    let m = g.generalized_average_degree(1.0).alpha_avg;
    let (lo, hi) = m.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    hi - lo <= 1e-9 * (1.0 + hi)
}

fn dominating_pattern(degrees: &[usize]) -> StructuralClass {
    let n = degrees.len();
    let dominating = degrees.iter().filter(|&&d| d == n - 1).count();
    let mut rest = degrees.iter().filter(|&&d| d != n - 1);
    let Some(&first) = rest.next() else {
        return StructuralClass::Complete;
    };
    if dominating == 0 || !rest.all(|&d| d == first) {
        return StructuralClass::None;
    }
    match dominating + 1 {
        2 => StructuralClass::StarLike,
        t => StructuralClass::Bidegreed { t },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::EqualityBranch;

    fn bowtie() -> Graph {
        Graph::parse_edge_list("5\n1 2\n1 3\n1 4\n1 5\n2 3\n4 5").unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * (1.0 + b.abs())
    }

    #[test]
    fn kind_names_round_trip() {
        for k in MatrixKind::ALL {
            assert_eq!(k.as_str().parse::<MatrixKind>().unwrap(), k);
        }
        assert!("laplacian".parse::<MatrixKind>().is_err());
    }

    #[test]
    fn complete_graph_bounds_collapse() {
        let g = Graph::complete(3).unwrap();
        let gb = GraphBounds::new(&g);
        for alpha in [-1.0, 0.0, 1.0] {
            assert!(close(gb.adjacency_upper(alpha, 1).unwrap().value, 2.0));
            assert!(close(gb.signless_upper(alpha, 1).unwrap().value, 4.0));
            assert!(close(gb.distance_upper(alpha, 1).unwrap().value, 2.0));
            assert!(close(gb.dsl_upper(alpha, 1).unwrap().value, 4.0));
            assert!(close(gb.distance_lower(alpha).unwrap().value, 2.0));
            assert!(close(gb.dsl_lower(alpha).unwrap().value, 4.0));
        }
    }

    #[test]
    fn signless_bowtie_equality() {
        let g = bowtie();
        let r = signless_upper(&g, 1.0, 2).unwrap();
        assert!(close(r.value, (7.0 + 17f64.sqrt()) / 2.0));
        assert!(r.equality.holds);
        assert_eq!(r.equality.branch, EqualityBranch::Structured(2));
        assert_eq!(r.alpha, Some(1.0));
    }

    #[test]
    fn average_specializations() {
        let star = Graph::star(4).unwrap();
        let r = adjacency_upper_avg(&star, 1).unwrap();
        assert!(close(r.value, 3.0));
        assert_eq!(r, adjacency_upper(&star, 1.0, 1).unwrap());

        let r = adjacency_upper_avg(&bowtie(), 1).unwrap();
        assert!(close(r.value, 3.0));

        let c4 = Graph::cycle(4).unwrap();
        let r = adjacency_upper_avg(&c4, 1).unwrap();
        assert!(close(r.value, 2.0));
        assert!(r.equality.holds);

        let p3 = Graph::path(3).unwrap();
        let r = distance_upper_avg(&p3, 1).unwrap();
        assert!(close(r.value, 3.0));
        assert_eq!(r, distance_upper(&p3, 1.0, 1).unwrap());

        let c5 = Graph::cycle(5).unwrap();
        let r = distance_upper_avg(&c5, 1).unwrap();
        assert!(close(r.value, 6.0));
        assert!(r.equality.holds);
    }

    #[test]
    fn path_distance_bounds() {
        let p3 = Graph::path(3).unwrap();
        let gb = GraphBounds::new(&p3);
        let rho = 1.0 + 3f64.sqrt();
        assert!((gb.rho(MatrixKind::Distance).unwrap() - rho).abs() < 1e-10);
        assert!(close(gb.distance_upper(0.0, 1).unwrap().value, 3.0));
        assert!(close(
            gb.distance_lower(0.0).unwrap().value,
            (1.0 + 17f64.sqrt()) / 2.0
        ));
        assert!(close(gb.dsl_upper(0.0, 1).unwrap().value, 6.0));
        assert!(close(gb.dsl_lower(0.0).unwrap().value, 5.0));
    }

    #[test]
    fn adjacency_and_signless_lower_use_row_sums() {
        let star = Graph::star(4).unwrap();
        let gb = GraphBounds::new(&star);
        let a = gb.lower(MatrixKind::Adjacency, 2.0).unwrap();
        assert_eq!(a.value, 1.0);
        assert_eq!(a.alpha, Some(2.0));
        assert_eq!(a.value, gb.lower(MatrixKind::Adjacency, -1.0).unwrap().value);
    }

    #[test]
    fn structural_classes() {
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(
            structural_equality_class(&c5, 1.0, MatrixKind::Adjacency).class,
            StructuralClass::Regular
        );
        assert_eq!(
            structural_equality_class(&c5, 1.0, MatrixKind::Distance).class,
            StructuralClass::TransmissionRegular
        );

        let s = structural_equality_class(&bowtie(), 1.0, MatrixKind::SignlessLaplacian);
        assert_eq!(s.class, StructuralClass::StarLike);
        assert!(s.matches_theorem);
        assert!(!structural_equality_class(&bowtie(), -1.0, MatrixKind::SignlessLaplacian).matches_theorem);

        let k4e = Graph::parse_edge_list("4\n1 2\n1 3\n1 4\n2 3\n2 4").unwrap();
        let s = structural_equality_class(&k4e, 0.0, MatrixKind::Adjacency);
        assert_eq!(s.class, StructuralClass::Bidegreed { t: 3 });
        assert!(s.matches_theorem);
        assert!(!structural_equality_class(&k4e, 1.0, MatrixKind::Adjacency).matches_theorem);

        let k4 = Graph::complete(4).unwrap();
        for kind in MatrixKind::ALL {
            let s = structural_equality_class(&k4, -1.0, kind);
            assert_eq!(s.class, StructuralClass::Complete);
            assert!(s.matches_theorem);
        }

        let p4 = Graph::path(4).unwrap();
        assert_eq!(
            structural_equality_class(&p4, 0.0, MatrixKind::Adjacency).class,
            StructuralClass::None
        );
    }

    #[test]
    fn pseudo_regular_detection() {
        assert!(!is_pseudo_regular(&Graph::star(5).unwrap()));
        assert!(is_pseudo_regular(&Graph::cycle(6).unwrap()));
    }
}
