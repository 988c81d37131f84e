//! Linear connections as per-arrow transport-matrix fields: metric
//! compatibility, isometry gauge, backward parallel transport, the
//! contravariant condition, and the orthonormal-coframe formulation.
//!
//! Matrix convention: `V^{h''}_{h,h'}` is row `h''`, column `h'` of
//! `V_h(g)`; a vector transported backward from `g h` to `g` has
//! components `V_h(g) * (components at g h)`.

use crate::calculus::ScalarField;
use crate::error::{Error, Result};
use crate::lattice::GroupLattice;
use crate::matrix::{jacobi_symmetric, Matrix};
use crate::metric::{ad_permutation_matrix, invariance_class, MetricField};
use crate::scalar::Scalar;

/// Per-arrow, per-site transport matrices `V_h(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Connection<T: Scalar> {
    mats: Vec<Vec<Matrix<T>>>,
}

impl<T: Scalar> Connection<T> {
    pub fn constant(lat: &GroupLattice, per_arrow: Vec<Matrix<T>>) -> Self {
        assert_eq!(per_arrow.len(), lat.n_arrows());
        Connection {
            mats: per_arrow.into_iter().map(|m| vec![m; lat.n_sites()]).collect(),
        }
    }

    pub fn from_sites(lat: &GroupLattice, mats: Vec<Vec<Matrix<T>>>) -> Result<Self> {
        if mats.len() != lat.n_arrows()
            || mats.iter().any(|per_site| per_site.len() != lat.n_sites())
            || mats.iter().flatten().any(|m| m.dim() != lat.n_arrows())
        {
            return Err(Error::Connection("connection shape mismatch".into()));
        }
        Ok(Connection { mats })
    }

    pub fn identity(lat: &GroupLattice) -> Self {
        Connection::constant(lat, vec![Matrix::identity(lat.n_arrows()); lat.n_arrows()])
    }

    pub fn v(&self, arrow: usize, site: usize) -> &Matrix<T> {
        &self.mats[arrow][site]
    }

    pub fn v_mut(&mut self, arrow: usize, site: usize) -> &mut Matrix<T> {
        &mut self.mats[arrow][site]
    }

    pub fn n_arrows(&self) -> usize {
        self.mats.len()
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> Connection<U> {
        Connection {
            mats: self
                .mats
                .iter()
                .map(|per_site| {
                    per_site
                        .iter()
                        .map(|m| {
                            Matrix::from_rows(
                                m.rows().iter().map(|r| r.iter().map(f).collect()).collect(),
                            )
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// `V_a(g) V_b(g h_a)`, the two-step transport block used by curvature
    /// and the integrability isometries.
    pub fn pair_product(&self, lat: &GroupLattice, a: usize, b: usize, site: usize) -> Matrix<T> {
        self.v(a, site).mul(self.v(b, lat.step(site, a)))
    }
}

/// Per-arrow, per-site matrix residuals.
#[derive(Debug, Clone)]
pub struct ResidualField<T: Scalar> {
    pub per_arrow: Vec<Vec<Matrix<T>>>,
}

impl<T: Scalar> ResidualField<T> {
    pub fn is_negligible(&self) -> bool {
        self.per_arrow.iter().flatten().all(|m| m.is_negligible())
    }

    pub fn max_abs(&self) -> f64 {
        self.per_arrow.iter().flatten().map(|m| m.max_abs()).fold(0.0, f64::max)
    }
}

/// `residual(g, h) = g(g h) - V_h(g)^T g(g) V_h(g)`; compatibility means
/// every entry vanishes.
pub fn compatibility_residual<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    c: &Connection<T>,
) -> ResidualField<T> {
    let per_arrow = (0..lat.n_arrows())
        .map(|h| {
            (0..lat.n_sites())
                .map(|g| m.at(lat.step(g, h)).sub(&m.at(g).congruence(c.v(h, g))))
                .collect()
        })
        .collect();
    ResidualField { per_arrow }
}

pub fn is_compatible<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    c: &Connection<T>,
) -> bool {
    compatibility_residual(lat, m, c).is_negligible()
}

/// Per-arrow, per-site isometry matrices `J_h(g)`.
#[derive(Debug, Clone)]
pub struct IsometryGauge<T: Scalar> {
    pub mats: Vec<Vec<Matrix<T>>>,
}

impl<T: Scalar> IsometryGauge<T> {
    pub fn constant(lat: &GroupLattice, per_arrow: Vec<Matrix<T>>) -> Self {
        IsometryGauge {
            mats: per_arrow.into_iter().map(|m| vec![m; lat.n_sites()]).collect(),
        }
    }

    /// Checks `J^T g J = g` sitewise for the working metric.
    pub fn validate(&self, lat: &GroupLattice, m: &MetricField<T>) -> Result<()> {
        for (h, per_site) in self.mats.iter().enumerate() {
            for (g, j) in per_site.iter().enumerate() {
                if !m.at(g).congruence(j).sub(m.at(g)).is_negligible() {
                    return Err(Error::Connection(format!(
                        "gauge is not an isometry at site {} arrow {}",
                        lat.group().name(g),
                        lat.arrow_name(h)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `V_h -> J_h V_h` pointwise. Compatibility residuals are unchanged for
/// valid gauges.
pub fn apply_gauge<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    j: &IsometryGauge<T>,
) -> Connection<T> {
    Connection {
        mats: (0..lat.n_arrows())
            .map(|h| {
                (0..lat.n_sites()).map(|g| j.mats[h][g].mul(c.v(h, g))).collect()
            })
            .collect(),
    }
}

/// Reflection `J = I - 2 v (v^T g) / (v^T g v)` in the `g`-inner product;
/// an exact isometry of `g` for any non-null vector `v`.
pub fn householder_isometry<T: Scalar>(g: &Matrix<T>, v: &[T]) -> Option<Matrix<T>> {
    let n = g.dim();
    let gv = g.mul_vec(v);
    let mut vgv = T::zero();
    for i in 0..n {
        vgv = vgv + v[i].clone() * gv[i].clone();
    }
    if vgv.is_zero() || vgv.is_negligible() {
        return None;
    }
    let mut j: Matrix<T> = Matrix::identity(n);
    let two = T::from_i64(2);
    for r in 0..n {
        for c in 0..n {
            let delta = two.clone() * v[r].clone() * gv[c].clone() / vgv.clone();
            j[(r, c)] = j[(r, c)].clone() - delta;
        }
    }
    Some(j)
}

/// Product `V_{h1}(g) V_{h2}(g h1) ... V_{hr}(g h1 ... h_{r-1})`. The empty
/// path gives the identity.
pub fn transport_matrix<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    base: usize,
    path: &[usize],
) -> Matrix<T> {
    let mut acc = Matrix::identity(lat.n_arrows());
    let mut site = base;
    for &h in path {
        acc = acc.mul(c.v(h, site));
        site = lat.step(site, h);
    }
    acc
}

/// Components at `base` of the backward transport of `ell_target` from the
/// far end of `path`.
pub fn backward_transport<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    base: usize,
    path: &[usize],
    target: usize,
) -> Vec<T> {
    transport_matrix(lat, c, base, path).col(target)
}

/// Independent check that transported basis vectors reproduce the metric:
/// `g(V_{h,h'}, V_{h,h''})(g) = g_{h',h''}(g h)` for all sites and arrows.
pub fn isometry_preservation_check<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    c: &Connection<T>,
) -> bool {
    let n = lat.n_arrows();
    for g in 0..lat.n_sites() {
        for h in 0..n {
            let v = c.v(h, g);
            let gh = lat.step(g, h);
            for hp in 0..n {
                for hpp in 0..n {
                    let mut inner = T::zero();
                    for a in 0..n {
                        for b in 0..n {
                            inner = inner
                                + v[(a, hp)].clone()
                                    * m.at(g)[(a, b)].clone()
                                    * v[(b, hpp)].clone();
                        }
                    }
                    if !(inner - m.at(gh)[(hp, hpp)].clone()).is_negligible() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `residual(g, h) = h(g h) - U_h(g) h(g) U_h(g)^T` with `U_h = V_h^{-1}`
/// and `h = g^{-1}`.
pub fn contravariant_residual<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    c: &Connection<T>,
) -> Result<ResidualField<T>> {
    let hfield = crate::metric::inverse_metric(lat, m)?;
    let mut per_arrow = Vec::with_capacity(lat.n_arrows());
    for h in 0..lat.n_arrows() {
        let mut per_site = Vec::with_capacity(lat.n_sites());
        for g in 0..lat.n_sites() {
            let u = c.v(h, g).inverse().ok_or_else(|| {
                Error::Connection(format!(
                    "singular transport matrix at site {} arrow {}",
                    lat.group().name(g),
                    lat.arrow_name(h)
                ))
            })?;
            let transported = u.mul(&hfield[g]).mul(&u.transpose());
            per_site.push(hfield[lat.step(g, h)].sub(&transported));
        }
        per_arrow.push(per_site);
    }
    Ok(ResidualField { per_arrow })
}

/// `V_h = P_h`, the `ad(h)` permutation; compatible with every
/// right-invariant metric.
pub fn natural_connection<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
) -> Result<Connection<T>> {
    if !invariance_class(lat, m).right_invariant {
        return Err(Error::Connection("metric is not right-invariant".into()));
    }
    Ok(Connection::constant(
        lat,
        (0..lat.n_arrows()).map(|h| ad_permutation_matrix(lat, h)).collect(),
    ))
}

/// Orthonormal coframe: per-site `E` (rows are frame indices, columns
/// arrows) with `E^T eta E = g`, plus the inverse and the constant `eta`.
#[derive(Debug, Clone)]
pub struct Coframe {
    pub e: Vec<Matrix<f64>>,
    pub e_inv: Vec<Matrix<f64>>,
    /// Diagonal of `eta` (+1s first).
    pub eta: Vec<f64>,
}

impl Coframe {
    pub fn eta_matrix(&self) -> Matrix<f64> {
        let mut m = Matrix::zero(self.eta.len());
        for (i, &s) in self.eta.iter().enumerate() {
            m[(i, i)] = s;
        }
        m
    }
}

/// Factors one symmetric invertible matrix as `E^T eta E`. Euclidean
/// signature uses Cholesky (upper-triangular `E`, positive diagonal);
/// otherwise the Jacobi eigendecomposition with `eta` ordered `(+..+,-..-)`.
pub fn factor_metric(g: &Matrix<f64>) -> Result<(Matrix<f64>, Vec<f64>)> {
    let n = g.dim();
    let (plus, minus) =
        g.signature().map_err(|e| Error::Metric(format!("coframe factorization: {e}")))?;
    if minus == 0 {
        // g = L L^T, E = L^T.
        let mut l = Matrix::<f64>::zero(n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = g[(i, j)];
                for k in 0..j {
                    sum -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::Metric("Cholesky breakdown".into()));
                    }
                    l[(i, i)] = sum.sqrt();
                } else {
                    l[(i, j)] = sum / l[(j, j)];
                }
            }
        }
        Ok((l.transpose(), vec![1.0; n]))
    } else {
        let (eigs, q) = jacobi_symmetric(g);
        let mut order: Vec<usize> = (0..n).collect();
        // Positive eigenvalues first, each group by descending magnitude.
        order.sort_by(|&a, &b| {
            let (sa, sb) = (eigs[a] > 0.0, eigs[b] > 0.0);
            sb.cmp(&sa).then(eigs[b].abs().total_cmp(&eigs[a].abs()))
        });
        let mut e = Matrix::<f64>::zero(n);
        let mut eta = vec![0.0; n];
        for (row, &k) in order.iter().enumerate() {
            eta[row] = if eigs[k] > 0.0 { 1.0 } else { -1.0 };
            let scale = eigs[k].abs().sqrt();
            for col in 0..n {
                e[(row, col)] = scale * q[(col, k)];
            }
        }
        let _ = (plus, minus);
        Ok((e, eta))
    }
}

/// Builds the orthonormal coframe field of a constant-signature metric.
pub fn build_coframe(lat: &GroupLattice, m: &MetricField<f64>) -> Result<Coframe> {
    let report = crate::metric::validate_metric(lat, m)?;
    if !report.constant {
        return Err(Error::Metric("signature is not constant across sites".into()));
    }
    let mut e = Vec::with_capacity(lat.n_sites());
    let mut e_inv = Vec::with_capacity(lat.n_sites());
    let mut eta = Vec::new();
    for g in 0..lat.n_sites() {
        let (eg, etag) = factor_metric(m.at(g))?;
        let inv = eg
            .inverse()
            .ok_or_else(|| Error::Metric("coframe matrix is singular".into()))?;
        if g == 0 {
            eta = etag;
        }
        e.push(eg);
        e_inv.push(inv);
    }
    Ok(Coframe { e, e_inv, eta })
}

/// `L_h(g) = E(g) V_h(g) E^{-1}(g h)`; for compatible connections these
/// satisfy `L^T eta L = eta` everywhere.
pub fn frame_connection(
    lat: &GroupLattice,
    cf: &Coframe,
    c: &Connection<f64>,
) -> Vec<Vec<Matrix<f64>>> {
    (0..lat.n_arrows())
        .map(|h| {
            (0..lat.n_sites())
                .map(|g| cf.e[g].mul(c.v(h, g)).mul(&cf.e_inv[lat.step(g, h)]))
                .collect()
        })
        .collect()
}

/// Largest deviation of `L^T eta L` from `eta` over all sites and arrows.
pub fn frame_orthogonality_residual(
    lat: &GroupLattice,
    cf: &Coframe,
    ls: &[Vec<Matrix<f64>>],
) -> f64 {
    let eta = cf.eta_matrix();
    let mut worst = 0.0f64;
    for per_site in ls {
        for l in per_site {
            worst = worst.max(eta.congruence(l).sub(&eta).max_abs());
        }
    }
    let _ = lat;
    worst
}

/// Both sides of the two-dimensional Einstein-Hilbert identity, per site:
/// the antisymmetrized frame-lowered curvature at the slot `(1̂, 2̂)` scaled
/// by `det(E^{-1})`, and `R sqrt(det g)` from the Ricci route.
pub fn einstein_hilbert_density(
    lat: &GroupLattice,
    m: &MetricField<f64>,
    c: &Connection<f64>,
) -> Result<(ScalarField<f64>, ScalarField<f64>)> {
    if lat.n_arrows() != 2 {
        return Err(Error::Connection("Einstein-Hilbert density needs |S| = 2".into()));
    }
    let report = crate::metric::validate_metric(lat, m)?;
    if !report.constant || report.per_site[0] != (2, 0) {
        return Err(Error::Connection(
            "Einstein-Hilbert density needs a positive-definite metric".into(),
        ));
    }
    let cf = build_coframe(lat, m)?;
    let cc = crate::torsion_curvature::curvature(lat, c);
    let ric = crate::torsion_curvature::ricci(lat, &cc);
    let scalar = crate::torsion_curvature::curvature_scalar(lat, m, &ric.primary)?;

    let mut lhs = Vec::with_capacity(lat.n_sites());
    let mut rhs = Vec::with_capacity(lat.n_sites());
    for g in 0..lat.n_sites() {
        // Full curvature matrix (R^h_{h'}) at the slot (1̂, 2̂).
        let slot = cc.total_slot_matrix(0, 1, g);
        let lowered = m.at(g).mul(&slot);
        let antisym = lowered[(0, 1)] - lowered[(1, 0)];
        let det_einv = cf.e_inv[g].det();
        lhs.push(det_einv * antisym);
        rhs.push(scalar.values[g] * m.at(g).det().sqrt());
    }
    Ok((ScalarField { values: lhs }, ScalarField { values: rhs }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_group, classify, GroupSpec};
    use crate::metric::right_invariant_extension;
    use crate::scalar::{rat, rat_int, Rat};

    fn z3_lattice() -> GroupLattice {
        classify(build_group(&GroupSpec::Cyclic(3)).unwrap(), vec![1, 2]).unwrap()
    }

    pub(crate) fn z3_spherical(lat: &GroupLattice) -> Connection<Rat> {
        Connection::constant(
            lat,
            vec![
                Matrix::from_i64(&[&[0, -1], &[1, 0]]),
                Matrix::from_i64(&[&[0, 1], &[-1, 0]]),
            ],
        )
    }

    fn z3_maximal_torsion_free(lat: &GroupLattice) -> Connection<Rat> {
        Connection::constant(
            lat,
            vec![
                Matrix::from_i64(&[&[-1, -1], &[1, 0]]),
                Matrix::from_i64(&[&[0, 1], &[-1, -1]]),
            ],
        )
    }

    #[test]
    fn z3_spherical_is_compatible_with_identity_metric() {
        let lat = z3_lattice();
        let m = MetricField::<Rat>::identity(&lat);
        let c = z3_spherical(&lat);
        assert!(compatibility_residual(&lat, &m, &c).is_negligible());
        assert!(isometry_preservation_check(&lat, &m, &c));
    }

    #[test]
    fn z3_torsion_free_with_propagated_metric() {
        let lat = z3_lattice();
        let c = z3_maximal_torsion_free(&lat);
        // Propagate (a,b,c)(0) = (2,1,3) by R1*(a,b,c) = (a-2b+c, a-b, a).
        let step = |t: (Rat, Rat, Rat)| {
            (
                t.0.clone() - rat_int(2) * t.1.clone() + t.2.clone(),
                t.0.clone() - t.1.clone(),
                t.0.clone(),
            )
        };
        let g0 = (rat_int(2), rat_int(1), rat_int(3));
        let g1 = step(g0.clone());
        let g2 = step(g1.clone());
        let to_mat = |t: &(Rat, Rat, Rat)| {
            Matrix::from_rows(vec![
                vec![t.0.clone(), t.1.clone()],
                vec![t.1.clone(), t.2.clone()],
            ])
        };
        let m =
            MetricField::from_sites(&lat, vec![to_mat(&g0), to_mat(&g1), to_mat(&g2)]).unwrap();
        assert!(compatibility_residual(&lat, &m, &c).is_negligible());
        // Wrap-around closes: one more step returns the site-0 matrix.
        let g3 = step(g2);
        assert_eq!(to_mat(&g3), to_mat(&g0));
    }

    #[test]
    fn identity_connection_fails_nonconstant_metric() {
        let lat = z3_lattice();
        let mut sites = vec![Matrix::<Rat>::identity(2); 3];
        sites[1][(0, 0)] = rat_int(4);
        let m = MetricField::from_sites(&lat, sites).unwrap();
        let c = Connection::identity(&lat);
        assert!(!compatibility_residual(&lat, &m, &c).is_negligible());
        assert!(!isometry_preservation_check(&lat, &m, &c));
    }

    #[test]
    fn gauge_preserves_compatibility() {
        let lat = z3_lattice();
        let m = MetricField::<Rat>::identity(&lat);
        let c = z3_spherical(&lat);
        // Identity gauge does nothing.
        let jid = IsometryGauge::constant(&lat, vec![Matrix::identity(2); 2]);
        assert_eq!(apply_gauge(&lat, &c, &jid), c);
        // Exact rational rotation is an isometry of the identity metric.
        let rot: Matrix<Rat> = Matrix::from_rows(vec![
            vec![rat(3, 5), rat(-4, 5)],
            vec![rat(4, 5), rat(3, 5)],
        ]);
        let j = IsometryGauge::constant(&lat, vec![rot.clone(), rot]);
        j.validate(&lat, &m).unwrap();
        let gauged = apply_gauge(&lat, &c, &j);
        assert!(compatibility_residual(&lat, &m, &gauged).is_negligible());
    }

    #[test]
    fn lorentz_gauge_example() {
        let lat = z3_lattice();
        let eta: Matrix<Rat> = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        let m = MetricField::constant(&lat, eta.clone());
        let j = IsometryGauge::constant(&lat, vec![eta.clone(), eta]);
        j.validate(&lat, &m).unwrap();
    }

    #[test]
    fn householder_is_exact_isometry() {
        let g: Matrix<Rat> =
            Matrix::from_rows(vec![vec![rat_int(2), rat(1, 2)], vec![rat(1, 2), rat_int(1)]]);
        let j = householder_isometry(&g, &[rat_int(1), rat_int(3)]).unwrap();
        assert_eq!(g.congruence(&j), g);
        // Null vector rejected for a Lorentzian form.
        let eta: Matrix<Rat> = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
        assert!(householder_isometry(&eta, &[rat_int(1), rat_int(1)]).is_none());
    }

    #[test]
    fn backward_transport_tables() {
        let lat = z3_lattice();
        // Torsion-free: V_l1 maps l1 -> l2 - l1 and l2 -> -l1.
        let c = z3_maximal_torsion_free(&lat);
        assert_eq!(backward_transport(&lat, &c, 0, &[0], 0), vec![rat_int(-1), rat_int(1)]);
        assert_eq!(backward_transport(&lat, &c, 0, &[0], 1), vec![rat_int(-1), rat_int(0)]);
        // Spherical: V_l1 maps l1 -> l2, l2 -> -l1.
        let c = z3_spherical(&lat);
        assert_eq!(backward_transport(&lat, &c, 0, &[0], 0), vec![rat_int(0), rat_int(1)]);
        assert_eq!(backward_transport(&lat, &c, 0, &[0], 1), vec![rat_int(-1), rat_int(0)]);
        // Identity connection leaves components unchanged.
        let id = Connection::<Rat>::identity(&lat);
        assert_eq!(backward_transport(&lat, &id, 0, &[0, 1, 0], 1), vec![rat_int(0), rat_int(1)]);
    }

    #[test]
    fn transport_composes_over_paths() {
        let lat = z3_lattice();
        let c = z3_spherical(&lat);
        let p = [0usize, 1, 0];
        let q = [1usize, 1];
        let full: Vec<usize> = p.iter().chain(q.iter()).copied().collect();
        let mid = p.iter().fold(0usize, |s, &h| lat.step(s, h));
        let lhs = transport_matrix(&lat, &c, 0, &full);
        let rhs = transport_matrix(&lat, &c, 0, &p)
            .mul(&transport_matrix(&lat, &c, mid, &q));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn contravariant_residual_matches_compatibility() {
        let lat = z3_lattice();
        let m = MetricField::<Rat>::identity(&lat);
        let good = z3_spherical(&lat);
        assert!(contravariant_residual(&lat, &m, &good).unwrap().is_negligible());
        let mut bad = good.clone();
        bad.v_mut(0, 1)[(0, 0)] = rat_int(3);
        assert!(!contravariant_residual(&lat, &m, &bad).unwrap().is_negligible());
    }

    #[test]
    fn natural_connection_on_s3() {
        let g = build_group(&GroupSpec::Symmetric(3)).unwrap();
        let arrows: Vec<usize> =
            ["(12)", "(13)", "(23)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        let lat = classify(g, arrows).unwrap();
        let seed: Matrix<Rat> = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 5], &[3, 5, 6]]);
        let m = right_invariant_extension(&lat, seed).unwrap();
        let c = natural_connection(&lat, &m).unwrap();
        assert_eq!(
            c.v(0, 0),
            &Matrix::from_i64(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
        );
        assert!(compatibility_residual(&lat, &m, &c).is_negligible());
        // Abelian lattice: natural connection is the identity.
        let z3 = z3_lattice();
        let id = natural_connection(&z3, &MetricField::<Rat>::identity(&z3)).unwrap();
        assert_eq!(id, Connection::identity(&z3));
    }

    #[test]
    fn coframe_factorizations() {
        let lat = z3_lattice();
        // Identity metric: E = I, eta = I.
        let cf = build_coframe(&lat, &MetricField::<f64>::identity(&lat)).unwrap();
        assert!(cf.e[0].sub(&Matrix::identity(2)).max_abs() < 1e-12);
        assert_eq!(cf.eta, vec![1.0, 1.0]);

        // Regular-triangle metric: E = [[1, 1/2], [0, sqrt(3)/2]].
        let g = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.5, 1.0]]);
        let m = MetricField::constant(&lat, g.clone());
        let cf = build_coframe(&lat, &m).unwrap();
        let expect = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.0, 3f64.sqrt() / 2.0]]);
        assert!(cf.e[0].sub(&expect).max_abs() < 1e-12);
        // Reconstruction E^T eta E = g.
        let recon = cf.eta_matrix().congruence(&cf.e[0]);
        assert!(recon.sub(&g).max_abs() < 1e-12);

        // Lorentzian diag(1,-1): eta = (+,-), E = I.
        let lor = Matrix::from_rows(vec![vec![1.0, 0.0], vec![0.0, -1.0]]);
        let cf = build_coframe(&lat, &MetricField::constant(&lat, lor)).unwrap();
        assert_eq!(cf.eta, vec![1.0, -1.0]);
        assert!(cf.e[0].sub(&Matrix::identity(2)).max_abs() < 1e-12);
    }

    #[test]
    fn frame_connection_is_orthogonal_for_compatible_pairs() {
        let lat = z3_lattice();
        let m = MetricField::<f64>::identity(&lat);
        let c = z3_spherical(&lat).map(|r| crate::scalar::Scalar::to_f64(r));
        let cf = build_coframe(&lat, &m).unwrap();
        let ls = frame_connection(&lat, &cf, &c);
        assert!(frame_orthogonality_residual(&lat, &cf, &ls) < 1e-12);
        // With E = I the frame matrices equal the transport matrices.
        assert!(ls[0][0].sub(c.v(0, 0)).max_abs() < 1e-12);

        // A non-compatible connection is flagged.
        let mut bad = c.clone();
        bad.v_mut(0, 0)[(0, 0)] = 5.0;
        let ls_bad = frame_connection(&lat, &cf, &bad);
        assert!(frame_orthogonality_residual(&lat, &cf, &ls_bad) > 1.0);
    }

    #[test]
    fn einstein_hilbert_flat_is_zero() {
        let g = build_group(&GroupSpec::Torus(vec![3, 3])).unwrap();
        let a1 = g.element_by_name("[1,0]").unwrap();
        let a2 = g.element_by_name("[0,1]").unwrap();
        let lat = classify(g, vec![a1, a2]).unwrap();
        let m = MetricField::<f64>::identity(&lat);
        let c = Connection::<f64>::identity(&lat);
        let (lhs, rhs) = einstein_hilbert_density(&lat, &m, &c).unwrap();
        assert!(lhs.is_negligible());
        assert!(rhs.is_negligible());
    }
}
