//! Metric tensors as left-covariant rank-2 tensors: validation, signature,
//! Killing/invariance classification, and right-invariant generation.

use crate::error::{Error, Result};
use crate::lattice::GroupLattice;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Per-site symmetric invertible coefficient matrix in the `(x)_L` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricField<T: Scalar> {
    sites: Vec<Matrix<T>>,
}

impl<T: Scalar> MetricField<T> {
    pub fn constant(lat: &GroupLattice, g: Matrix<T>) -> Self {
        assert_eq!(g.dim(), lat.n_arrows());
        MetricField { sites: vec![g; lat.n_sites()] }
    }

    pub fn from_sites(lat: &GroupLattice, sites: Vec<Matrix<T>>) -> Result<Self> {
        if sites.len() != lat.n_sites() {
            return Err(Error::Metric(format!(
                "expected {} site matrices, got {}",
                lat.n_sites(),
                sites.len()
            )));
        }
        if sites.iter().any(|m| m.dim() != lat.n_arrows()) {
            return Err(Error::Metric("metric matrix dimension must equal |S|".into()));
        }
        Ok(MetricField { sites })
    }

    pub fn identity(lat: &GroupLattice) -> Self {
        Self::constant(lat, Matrix::identity(lat.n_arrows()))
    }

    pub fn at(&self, site: usize) -> &Matrix<T> {
        &self.sites[site]
    }

    pub fn sites(&self) -> &[Matrix<T>] {
        &self.sites
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MetricField<U> {
        MetricField {
            sites: self
                .sites
                .iter()
                .map(|m| {
                    Matrix::from_rows(
                        m.rows().iter().map(|r| r.iter().map(&f).collect()).collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Per-site inertia counts; `constant` records whether they agree globally.
#[derive(Debug, Clone, PartialEq)]
pub struct SignatureReport {
    pub per_site: Vec<(usize, usize)>,
    pub constant: bool,
}

/// Checks symmetry and invertibility at every site and returns the
/// signature report. Constant signature is the precondition for any
/// metric-compatible connection to exist.
pub fn validate_metric<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
) -> Result<SignatureReport> {
    let mut per_site = Vec::with_capacity(lat.n_sites());
    for (site, g) in m.sites.iter().enumerate() {
        if !g.is_symmetric() {
            return Err(Error::Metric(format!(
                "asymmetric at site {}",
                lat.group().name(site)
            )));
        }
        let sig = g.signature().map_err(|e| {
            Error::Metric(format!("{} at site {}", e, lat.group().name(site)))
        })?;
        per_site.push(sig);
    }
    let constant = per_site.windows(2).all(|w| w[0] == w[1]);
    Ok(SignatureReport { per_site, constant })
}

/// Permutation matrix of `ad(h)` on arrows: column `j` carries a one in
/// row `ad(h) h_j`, so that `(P^T g P)_{h1,h2} = g_{ad(h)h1, ad(h)h2}`.
pub fn ad_permutation_matrix<T: Scalar>(lat: &GroupLattice, arrow: usize) -> Matrix<T> {
    let n = lat.n_arrows();
    let mut p = Matrix::zero(n);
    for j in 0..n {
        p[(lat.ad(arrow, j), j)] = T::one();
    }
    p
}

#[derive(Debug, Clone)]
pub struct KillingReport {
    pub holds: bool,
    /// Largest deviation, as f64 (exact backends report the exact max).
    pub residual: f64,
}

/// `ell_h` is a Killing field iff `g(gh)_{h1,h2} = g(g)_{ad(h)h1, ad(h)h2}`
/// at every site.
pub fn killing_check<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    arrow: usize,
) -> KillingReport {
    let p: Matrix<T> = ad_permutation_matrix(lat, arrow);
    let mut residual = 0.0f64;
    let mut holds = true;
    for g in 0..lat.n_sites() {
        let lhs = m.at(lat.step(g, arrow));
        let rhs = m.at(g).congruence(&p);
        let diff = lhs.sub(&rhs);
        if !diff.is_negligible() {
            holds = false;
        }
        residual = residual.max(diff.max_abs());
    }
    KillingReport { holds, residual }
}

/// Propagates a seed matrix at the identity through
/// `g(gh) = P_h^T g(g) P_h`, breadth-first, verifying closure on every
/// revisit. Fails when the arrows do not generate the group or the seed
/// does not extend consistently.
pub fn right_invariant_extension<T: Scalar>(
    lat: &GroupLattice,
    seed: Matrix<T>,
) -> Result<MetricField<T>> {
    if !seed.is_symmetric() {
        return Err(Error::Metric("seed must be symmetric".into()));
    }
    if seed.inverse().is_none() {
        return Err(Error::Metric("seed must be invertible".into()));
    }
    let n_sites = lat.n_sites();
    let mut sites: Vec<Option<Matrix<T>>> = vec![None; n_sites];
    let e = lat.group().identity();
    sites[e] = Some(seed);
    let mut queue = std::collections::VecDeque::from([e]);
    let perms: Vec<Matrix<T>> =
        (0..lat.n_arrows()).map(|h| ad_permutation_matrix(lat, h)).collect();
    while let Some(g) = queue.pop_front() {
        let here = sites[g].clone().expect("visited site has a matrix");
        for h in 0..lat.n_arrows() {
            let next = lat.step(g, h);
            let propagated = here.congruence(&perms[h]);
            match &sites[next] {
                None => {
                    sites[next] = Some(propagated);
                    queue.push_back(next);
                }
                Some(existing) => {
                    if !existing.sub(&propagated).is_negligible() {
                        return Err(Error::Metric(format!(
                            "inconsistent propagation into site {}",
                            lat.group().name(next)
                        )));
                    }
                }
            }
        }
    }
    let sites: Option<Vec<Matrix<T>>> = sites.into_iter().collect();
    let sites = sites.ok_or_else(|| {
        Error::Metric("arrow set does not generate the group; extension incomplete".into())
    })?;
    MetricField::from_sites(lat, sites)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvarianceClass {
    pub left_invariant: bool,
    pub right_invariant: bool,
    pub bi_invariant: bool,
}

pub fn invariance_class<T: Scalar>(lat: &GroupLattice, m: &MetricField<T>) -> InvarianceClass {
    let left = m.sites.iter().all(|g| g.sub(m.at(0)).is_negligible());
    let right = (0..lat.n_arrows()).all(|h| killing_check(lat, m, h).holds);
    // Ad-invariance of the (constant) coefficients, checked independently.
    let ad_invariant = left
        && (0..lat.n_arrows()).all(|h| {
            let p: Matrix<T> = ad_permutation_matrix(lat, h);
            m.at(0).congruence(&p).sub(m.at(0)).is_negligible()
        });
    InvarianceClass {
        left_invariant: left,
        right_invariant: right,
        bi_invariant: left && right && ad_invariant,
    }
}

/// Contravariant metric `h = g^{-1}` per site.
pub fn inverse_metric<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
) -> Result<Vec<Matrix<T>>> {
    m.sites
        .iter()
        .enumerate()
        .map(|(site, g)| {
            g.inverse().ok_or_else(|| {
                Error::Metric(format!("singular at site {}", lat.group().name(site)))
            })
        })
        .collect()
}
