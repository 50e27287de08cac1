//! Global operators of the smoothed and baseline formulations.

mod baseline;
mod loads;
mod operators;

pub use baseline::{assemble_baseline, assemble_fem_stiffness, assemble_mini, assemble_smoothed_stiffness};
pub use loads::{apply_dirichlet, assemble_loads, Traction};
pub use operators::{
    assemble_a_bar, assemble_b_bar, assemble_c_bar, assemble_condensed, assemble_h1_gram, assemble_plain_b,
};

use serde::{Deserialize, Serialize};

use crate::basis::BubbleKind;
use crate::dofs::DofMap;
use crate::mesh::DomainKind;
use crate::smoothing::{strain_blocks, MeshProducts, SmoothedStrainBlock};
use crate::sparse::CsrMatrix;
use crate::{Error, Real, Result};

/// Isotropic linear elastic material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material<T> {
    pub young: T,
    pub poisson: T,
    pub lambda: T,
    pub mu: T,
}

impl<T: Real> Material<T> {
    pub fn new(young: T, poisson: T) -> Result<Self> {
        if !(young > T::zero()) || !(poisson > -T::one() && poisson < T::lit(0.5)) {
            return Err(Error::InvalidInput(format!("invalid material E = {young}, nu = {poisson}")));
        }
        let one = T::one();
        let two = T::lit(2.0);
        Ok(Material {
            young,
            poisson,
            lambda: poisson * young / ((one + poisson) * (one - two * poisson)),
            mu: young / (two * (one + poisson)),
        })
    }

    pub fn from_lame(lambda: T, mu: T) -> Self {
        let young = mu * (T::lit(3.0) * lambda + T::lit(2.0) * mu) / (lambda + mu);
        let poisson = lambda / (T::lit(2.0) * (lambda + mu));
        Material { young, poisson, lambda, mu }
    }

    /// Full constitutive matrix in Voigt form (engineering shear), plane strain in 2D.
    pub fn voigt_full(&self, dim: usize) -> Vec<Vec<T>> {
        let mut d = self.voigt_deviatoric(dim);
        for i in 0..dim {
            for j in 0..dim {
                d[i][j] += self.lambda;
            }
        }
        d
    }

    /// `2μ diag(1, .., 1, ½, .., ½)`, the shear part only.
    pub fn voigt_deviatoric(&self, dim: usize) -> Vec<Vec<T>> {
        let nv = crate::smoothing::voigt_size(dim);
        let mut d = vec![vec![T::zero(); nv]; nv];
        for (i, row) in d.iter_mut().enumerate() {
            row[i] = if i < dim { T::lit(2.0) * self.mu } else { self.mu };
        }
        d
    }
}

/// Discretization methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    /// Bubble-enriched edge-based smoothing (2D).
    #[serde(rename = "bES-FEM")]
    BesFem,
    /// Bubble-enriched face-based smoothing (3D).
    #[serde(rename = "bFS-FEM")]
    BfsFem,
    /// Standard linear elements (T3 in 2D, T4 in 3D).
    #[serde(rename = "FEM-T3")]
    FemT3,
    #[serde(rename = "ES-FEM")]
    EsFem,
    #[serde(rename = "NS-FEM")]
    NsFem,
    #[serde(rename = "FS-FEM")]
    FsFem,
    #[serde(rename = "MINI")]
    Mini,
}

impl Method {
    pub const ALL: [Method; 7] =
        [Method::BesFem, Method::BfsFem, Method::FemT3, Method::EsFem, Method::NsFem, Method::FsFem, Method::Mini];

    pub fn name(self) -> &'static str {
        match self {
            Method::BesFem => "bES-FEM",
            Method::BfsFem => "bFS-FEM",
            Method::FemT3 => "FEM-T3",
            Method::EsFem => "ES-FEM",
            Method::NsFem => "NS-FEM",
            Method::FsFem => "FS-FEM",
            Method::Mini => "MINI",
        }
    }

    /// Smoothing domains the method integrates over.
    pub fn domain_kind(self, dim: usize) -> DomainKind {
        match self {
            Method::BesFem | Method::EsFem => DomainKind::Edge2d,
            Method::BfsFem | Method::FsFem => DomainKind::Face3d,
            Method::NsFem => DomainKind::Node,
            Method::FemT3 | Method::Mini => {
                if dim == 2 {
                    DomainKind::Edge2d
                } else {
                    DomainKind::Face3d
                }
            }
        }
    }

    pub fn supports(self, dim: usize) -> bool {
        match self {
            Method::BesFem | Method::EsFem => dim == 2,
            Method::BfsFem | Method::FsFem => dim == 3,
            _ => true,
        }
    }

    /// Mixed methods carry a pressure field.
    pub fn is_mixed(self) -> bool {
        matches!(self, Method::BesFem | Method::BfsFem | Method::Mini)
    }

    /// Bubble-enriched smoothed methods with a third-mesh pressure.
    pub fn is_bubble_smoothed(self) -> bool {
        matches!(self, Method::BesFem | Method::BfsFem)
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown method `{s}`")))
    }
}

/// Pressure mass: diagonal for third-mesh pressures, consistent for MINI.
#[derive(Debug, Clone)]
pub enum PressureMass<T> {
    Diagonal(Vec<T>),
    Consistent(CsrMatrix<T>),
}

impl<T: Real> PressureMass<T> {
    pub fn len(&self) -> usize {
        match self {
            PressureMass::Diagonal(d) => d.len(),
            PressureMass::Consistent(m) => m.nrows,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_csr(&self) -> CsrMatrix<T> {
        match self {
            PressureMass::Diagonal(d) => {
                let mut m = CsrMatrix::identity(d.len());
                m.values.clone_from(d);
                m
            }
            PressureMass::Consistent(m) => m.clone(),
        }
    }
}

/// Assembled operators for one method, mesh and material.
#[derive(Debug, Clone)]
pub struct OperatorBundle<T> {
    pub method: Method,
    pub dofmap: DofMap,
    /// `Ā` for mixed methods, the full stiffness otherwise.
    pub a: CsrMatrix<T>,
    /// `B̄` (pressure × displacement); absent for displacement-only methods.
    pub b: Option<CsrMatrix<T>>,
    pub c: Option<PressureMass<T>>,
    pub f: Vec<T>,
    pub material: Material<T>,
}

/// Operators together with the smoothing blocks they were built from.
#[derive(Debug, Clone)]
pub struct Assembled<T> {
    pub bundle: OperatorBundle<T>,
    pub blocks: Vec<SmoothedStrainBlock<T>>,
    pub bubble: Option<BubbleKind>,
}

/// Builds the bubble-enriched smoothed operators (`Ā`, `B̄`, `C̄`, loads).
pub fn assemble_bubble_smoothed<T: Real>(
    products: &MeshProducts<T>,
    material: Material<T>,
    bubble: BubbleKind,
    traction: &Traction<'_, T>,
) -> Result<Assembled<T>> {
    let dim = products.dim();
    let method = if dim == 2 { Method::BesFem } else { Method::BfsFem };
    if products.dual.kind != method.domain_kind(dim) {
        return Err(Error::InvalidInput(format!("{method} needs {:?} smoothing domains", method.domain_kind(dim))));
    }
    let dofmap = DofMap::new(&products.mesh, true, true);
    let blocks = strain_blocks(products, Some(bubble), &dofmap)?;
    let a = assemble_a_bar(&blocks, material.mu, dofmap.num_displacement());
    let b = assemble_b_bar(products, &blocks, &dofmap);
    let c = assemble_c_bar(products);
    let f = assemble_loads(products, &dofmap, traction);
    Ok(Assembled {
        bundle: OperatorBundle { method, dofmap, a, b: Some(b), c: Some(PressureMass::Diagonal(c)), f, material },
        blocks,
        bubble: Some(bubble),
    })
}

/// Assembles any method on products built with its domain kind.
pub fn assemble<T: Real>(
    method: Method,
    products: &MeshProducts<T>,
    material: Material<T>,
    bubble: BubbleKind,
    traction: &Traction<'_, T>,
) -> Result<Assembled<T>> {
    if !method.supports(products.dim()) {
        return Err(Error::InvalidInput(format!("{method} is not available in {}D", products.dim())));
    }
    if method.is_bubble_smoothed() {
        assemble_bubble_smoothed(products, material, bubble, traction)
    } else {
        assemble_baseline(method, products, material, traction)
    }
}
