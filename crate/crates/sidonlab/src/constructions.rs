//! Explicit Sidon-set constructions over F_2^{2m}: normal-form conics with
//! or without their nucleus, the cubic graph, the order-(q+1) cyclic
//! subgroup, and the Goppa-style conic set.
//!
//! Plane points embed into F_2^{2m} as x-bits in the low half and y-bits in
//! the high half; Sidon-ness is invariant under the choice of embedding.

use crate::algebra::{
    choose_gamma, quadratic_is_irreducible, DeltaMap, FieldElement, FieldParams, PlanePoint,
};
use crate::sbox::VectorialFunction;
use crate::sidon::PointSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("X^2 + {gamma:#x} X + 1 has a root in GF(2^{m}); not a valid ellipse parameter")]
    InvalidGamma { gamma: u32, m: u32 },
    #[error("g is reducible over GF(2^{m}): g({root:#x}) = 0")]
    ReducibleG { root: u32, m: u32 },
    #[error("the parabola's nucleus is at infinity; it cannot be adjoined")]
    ParabolaNucleus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicKind {
    Hyperbola,
    Parabola,
    Ellipse,
}

/// A normal-form conic of AG(2, q) plus the choice of adjoining its nucleus.
#[derive(Debug, Clone, Copy)]
pub struct ConicSpec {
    kind: ConicKind,
    params: FieldParams,
    gamma: Option<FieldElement>,
    include_nucleus: bool,
}

impl ConicSpec {
    /// Ellipses take the deterministic gamma from [`choose_gamma`].
    pub fn new(
        kind: ConicKind,
        params: FieldParams,
        include_nucleus: bool,
    ) -> Result<Self, ConstructionError> {
        let gamma = (kind == ConicKind::Ellipse).then(|| choose_gamma(params));
        Self::build(kind, params, gamma, include_nucleus)
    }

    pub fn with_gamma(
        kind: ConicKind,
        params: FieldParams,
        gamma: FieldElement,
        include_nucleus: bool,
    ) -> Result<Self, ConstructionError> {
        Self::build(kind, params, Some(gamma), include_nucleus)
    }

    fn build(
        kind: ConicKind,
        params: FieldParams,
        gamma: Option<FieldElement>,
        include_nucleus: bool,
    ) -> Result<Self, ConstructionError> {
        if kind == ConicKind::Parabola && include_nucleus {
            return Err(ConstructionError::ParabolaNucleus);
        }
        let gamma = match kind {
            ConicKind::Ellipse => {
                let g = gamma.expect("ellipse requires gamma");
                if !quadratic_is_irreducible(params, &g) {
                    return Err(ConstructionError::InvalidGamma {
                        gamma: g.bits(),
                        m: params.m(),
                    });
                }
                Some(g)
            }
            _ => None,
        };
        Ok(ConicSpec { kind, params, gamma, include_nucleus })
    }

    pub fn kind(&self) -> ConicKind {
        self.kind
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn gamma(&self) -> Option<FieldElement> {
        self.gamma
    }

    pub fn include_nucleus(&self) -> bool {
        self.include_nucleus
    }

    /// Value of the defining quadratic form at an affine point:
    /// XY, X^2 (vs Y), or X^2 + gamma XY + Y^2.
    pub fn form(&self, p: &PlanePoint) -> FieldElement {
        match self.kind {
            ConicKind::Hyperbola => p.x.mul(&p.y),
            ConicKind::Parabola => p.x.square().add(&p.y),
            ConicKind::Ellipse => {
                let gamma = self.gamma.unwrap();
                p.x.square().add(&gamma.mul(&p.x).mul(&p.y)).add(&p.y.square())
            }
        }
    }

    /// The affine rational points, before embedding; q-1 / q / q+1 of them.
    pub fn plane_points(&self) -> Vec<PlanePoint> {
        let f = self.params;
        let target = match self.kind {
            ConicKind::Parabola => f.zero(),
            _ => f.one(),
        };
        let mut pts = Vec::new();
        for x in f.elements() {
            for y in f.elements() {
                let p = PlanePoint::new(x, y);
                if self.form(&p) == target {
                    pts.push(p);
                }
            }
        }
        pts
    }
}

/// Affine points of the conic embedded into F_2^{2m}, nucleus appended when
/// requested. Hyperbola and ellipse have nucleus (0, 0).
pub fn conic_points(spec: &ConicSpec) -> PointSet {
    let d = DeltaMap::new(spec.params());
    let mut masks: Vec<u32> = spec.plane_points().iter().map(|p| d.embed(p).bits()).collect();
    if spec.include_nucleus() {
        masks.push(0);
    }
    PointSet::new(2 * spec.params().m(), masks)
}

/// The designated Sidon set of the conic theorem: C alone when 3 divides
/// |C|, else C with its nucleus. Sidon for every m; complete for m >= 4
/// (smaller m is allowed, the completeness guarantee just does not apply).
pub fn theorem2_set(kind: ConicKind, m: u32) -> PointSet {
    assert!(matches!(kind, ConicKind::Hyperbola | ConicKind::Ellipse));
    let params = FieldParams::new(m, None).unwrap();
    let q = params.order();
    let conic_size = match kind {
        ConicKind::Hyperbola => q - 1,
        _ => q + 1,
    };
    let spec = ConicSpec::new(kind, params, conic_size % 3 != 0).unwrap();
    conic_points(&spec)
}

/// Whether the completeness statement of the conic theorem applies to m.
pub fn theorem2_guaranteed(m: u32) -> bool {
    m >= 4
}

/// The classical cubic-graph Sidon set {(x, x^3)} of size q.
pub fn lindstrom_set(m: u32) -> PointSet {
    let params = FieldParams::new(m, None).unwrap();
    graph_of(&VectorialFunction::power_map(params, 3))
}

/// Graph {(x, f(x))} of an m-bit-to-m-bit function, in F_2^{2m}.
pub fn graph_of(f: &VectorialFunction) -> PointSet {
    assert_eq!(f.n(), f.m(), "graph embedding requires equal input/output dimension");
    let m = f.n();
    PointSet::new(2 * m, (0..1u32 << m).map(|x| x | (f.apply(x) << m)))
}

/// The multiplicative subgroup of order q+1 of GF(2^{2m}), as bit vectors in
/// the {1, delta} basis.
pub fn cyclic_subgroup_set(m: u32) -> PointSet {
    let params = FieldParams::new(m, None).unwrap();
    let d = DeltaMap::new(params);
    let q = params.order() as u64;
    let size = 1u64 << (2 * m);
    let members = (1..size).map(|z| z as u32).filter(|&z| d.ext_pow(z, q + 1) == 1);
    PointSet::new(2 * m, members)
}

/// Degree-2 polynomial g2 X^2 + g1 X + g0 over GF(2^m).
#[derive(Debug, Clone, Copy)]
pub struct QuadraticPoly {
    pub g0: FieldElement,
    pub g1: FieldElement,
    pub g2: FieldElement,
}

impl QuadraticPoly {
    pub fn eval(&self, t: &FieldElement) -> FieldElement {
        self.g2.mul(&t.square()).add(&self.g1.mul(t)).add(&self.g0)
    }
}

/// The Goppa-style set {(0,0)} plus {(1/g(t), t/g(t))}, of size q+1, lying
/// on the conic g0 X^2 + g1 XY + g2 Y^2 + X = 0.
pub fn goppa_conic_set(m: u32, g: &QuadraticPoly) -> Result<PointSet, ConstructionError> {
    let params = FieldParams::new(m, None).unwrap();
    assert_eq!(g.g0.params(), params, "polynomial not over GF(2^{m})");
    assert!(!g.g2.is_zero(), "g must have degree 2");
    if let Some(root) = params.elements().find(|t| g.eval(t).is_zero()) {
        return Err(ConstructionError::ReducibleG { root: root.bits(), m });
    }
    let d = DeltaMap::new(params);
    let mut masks = vec![0u32];
    for t in params.elements() {
        let inv = g.eval(&t).inv().expect("g has no roots");
        masks.push(d.embed(&PlanePoint::new(inv, t.mul(&inv))).bits());
    }
    Ok(PointSet::new(2 * m, masks))
}

/// The default Goppa polynomial X^2 + gamma X + 1 with the deterministic
/// gamma; irreducible by construction.
pub fn default_goppa_poly(m: u32) -> QuadraticPoly {
    let params = FieldParams::new(m, None).unwrap();
    QuadraticPoly { g0: params.one(), g1: choose_gamma(params), g2: params.one() }
}
