//! Torsion and curvature components in the biangle, triangle and
//! quadrangle sectors, Ricci contractions, the curvature scalar,
//! integrability isometries, and the vector-field formulation.
//!
//! Components live on 2-form slots `(h1, h2)` (sector `h2 h1`). The raw
//! quadrangle entries are gauge representatives; canonical components are
//! `|g| raw(slot) - sum(raw)` over the chain's slots and sum to zero per
//! chain. Triangle and quadrangle curvature matrices carry the printed
//! column shifts `ad(h0^{-1})` and `ad(g^{-1})`.

use crate::calculus::ScalarField;
use crate::connection::Connection;
use crate::error::{Error, Result};
use crate::lattice::{GroupLattice, PairClass};
use crate::matrix::Matrix;
use crate::metric::MetricField;
use crate::scalar::Scalar;

/// A vector (components over arrows) attached to every site.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField<T> {
    pub values: Vec<Vec<T>>,
}

impl<T: Scalar> VectorField<T> {
    pub fn zero(lat: &GroupLattice) -> Self {
        VectorField { values: vec![vec![T::zero(); lat.n_arrows()]; lat.n_sites()] }
    }

    pub fn is_negligible(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_negligible())
    }

    pub fn sub(&self, other: &Self) -> Self {
        VectorField {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| {
                    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
                })
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        VectorField {
            values: self
                .values
                .iter()
                .map(|a| a.iter().map(|x| x.clone() * s.clone()).collect())
                .collect(),
        }
    }
}

/// Torsion components `Q^h` per slot. `raw` holds the gauge representative
/// `delta^h_{h1} (- delta^h_{h0}) + V^h_{h1, ad(h1^{-1}) h2}`, `canonical`
/// the gauge-fixed sectors.
#[derive(Debug, Clone)]
pub struct TorsionComponents<T: Scalar> {
    n: usize,
    raw: Vec<VectorField<T>>,
    canonical: Vec<VectorField<T>>,
}

impl<T: Scalar> TorsionComponents<T> {
    /// Canonical component vector at slot `(i, j)` and `site`.
    pub fn slot(&self, i: usize, j: usize, site: usize) -> &[T] {
        &self.canonical[i * self.n + j].values[site]
    }

    pub fn slot_field(&self, i: usize, j: usize) -> &VectorField<T> {
        &self.canonical[i * self.n + j]
    }

    /// Gauge-invariant pairwise difference between two members of a chain,
    /// read off the raw representatives.
    pub fn quad_difference(
        &self,
        lat: &GroupLattice,
        chain: usize,
        member_a: usize,
        member_b: usize,
    ) -> VectorField<T> {
        let ch = &lat.chains()[chain];
        let (xa, ya) = {
            let (a, b) = ch.pairs[member_a];
            lat.slot_of_pair(a, b)
        };
        let (xb, yb) = {
            let (a, b) = ch.pairs[member_b];
            lat.slot_of_pair(a, b)
        };
        self.raw[xa * self.n + ya].sub(&self.raw[xb * self.n + yb])
    }

    pub fn is_negligible(&self) -> bool {
        self.canonical.iter().all(|v| v.is_negligible())
    }

    /// True when every slot of the given sector kind vanishes.
    pub fn sector_negligible(&self, lat: &GroupLattice, kind: SectorKind) -> bool {
        slots_of_kind(lat, kind).into_iter().all(|(i, j)| {
            self.canonical[i * self.n + j].is_negligible()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorKind {
    Biangle,
    Triangle,
    Quadrangle,
}

fn slots_of_kind(lat: &GroupLattice, kind: SectorKind) -> Vec<(usize, usize)> {
    let n = lat.n_arrows();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            matches!(
                (kind, lat.slot_sector(i, j)),
                (SectorKind::Biangle, PairClass::Biangle)
                    | (SectorKind::Triangle, PairClass::Triangle { .. })
                    | (SectorKind::Quadrangle, PairClass::Quadrangle { .. })
            )
        })
        .collect()
}

/// Canonicalizes quadrangle sectors of slot-indexed data:
/// `|g| raw(slot) - sum(raw over the chain's slots)`.
fn canonicalize_slots<D: Clone>(
    lat: &GroupLattice,
    raw: &[D],
    zero: impl Fn() -> D,
    add: impl Fn(&D, &D) -> D,
    scale_sub: impl Fn(&D, i64, &D) -> D,
) -> Vec<D> {
    let n = lat.n_arrows();
    let mut out: Vec<D> = raw.to_vec();
    for chain in lat.chains() {
        let slots: Vec<(usize, usize)> =
            chain.pairs.iter().map(|&(a, b)| lat.slot_of_pair(a, b)).collect();
        let mut total = zero();
        for &(x, y) in &slots {
            total = add(&total, &raw[x * n + y]);
        }
        for &(x, y) in &slots {
            out[x * n + y] = scale_sub(&raw[x * n + y], chain.len() as i64, &total);
        }
    }
    out
}

/// Torsion of a connection, all sectors.
pub fn torsion<T: Scalar>(lat: &GroupLattice, c: &Connection<T>) -> TorsionComponents<T> {
    let n = lat.n_arrows();
    let mut raw = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let b = lat.ad_inv(x, y); // in-order pair (x, b), slot (x, y)
            let mut field = VectorField::zero(lat);
            for g in 0..lat.n_sites() {
                let v = c.v(x, g);
                for h in 0..n {
                    let mut q = v[(h, b)].clone();
                    if h == x {
                        q = q + T::one();
                    }
                    if let PairClass::Triangle { h0 } = lat.slot_sector(x, y) {
                        if h == h0 {
                            q = q - T::one();
                        }
                    }
                    field.values[g][h] = q;
                }
            }
            raw.push(field);
        }
    }
    let canonical = canonicalize_slots(
        lat,
        &raw,
        || VectorField::zero(lat),
        |a, b| {
            let mut out = a.clone();
            for (r, s) in out.values.iter_mut().zip(&b.values) {
                for (x, y) in r.iter_mut().zip(s) {
                    *x = x.clone() + y.clone();
                }
            }
            out
        },
        |v, len, total| v.scale(&T::from_i64(len)).sub(total),
    );
    TorsionComponents { n, raw, canonical }
}

/// Curvature components per slot. `plaquette` holds the two-step products
/// `V_{h1}(g) V_{ad(h1^{-1})h2}(g h1)` before canonicalization and column
/// shifts; `canonical` the final `R^h_{h'}` matrices.
#[derive(Debug, Clone)]
pub struct CurvatureComponents<T: Scalar> {
    n: usize,
    plaquette: Vec<Vec<Matrix<T>>>,
    canonical: Vec<Vec<Matrix<T>>>,
}

impl<T: Scalar> CurvatureComponents<T> {
    /// Final component matrix `(R^h_{h'})` at slot `(i, j)` and `site`.
    pub fn slot(&self, i: usize, j: usize, site: usize) -> &Matrix<T> {
        &self.canonical[i * self.n + j][site]
    }

    /// Same as [`slot`](Self::slot); every slot belongs to one sector so the
    /// canonical matrix is already the total.
    pub fn total_slot_matrix(&self, i: usize, j: usize, site: usize) -> Matrix<T> {
        self.canonical[i * self.n + j][site].clone()
    }

    /// Gauge-invariant difference of two chain members, with the printed
    /// `ad(g^{-1})` column shift applied.
    pub fn quad_difference(
        &self,
        lat: &GroupLattice,
        chain: usize,
        member_a: usize,
        member_b: usize,
        site: usize,
    ) -> Matrix<T> {
        let ch = &lat.chains()[chain];
        let (xa, ya) = {
            let (a, b) = ch.pairs[member_a];
            lat.slot_of_pair(a, b)
        };
        let (xb, yb) = {
            let (a, b) = ch.pairs[member_b];
            lat.slot_of_pair(a, b)
        };
        let diff = self.plaquette[xa * self.n + ya][site]
            .sub(&self.plaquette[xb * self.n + yb][site]);
        shift_columns(lat, &diff, ch.g)
    }

    pub fn is_negligible(&self) -> bool {
        self.canonical.iter().flatten().all(|m| m.is_negligible())
    }

    pub fn sector_negligible(&self, lat: &GroupLattice, kind: SectorKind) -> bool {
        slots_of_kind(lat, kind)
            .into_iter()
            .all(|(i, j)| self.canonical[i * self.n + j].iter().all(|m| m.is_negligible()))
    }
}

/// Applies the column relabeling `h' -> ad(elem^{-1}) h'`: the entry
/// `(h, h')` of the result reads `(h, ad(elem^{-1}) h')` of the input.
/// `elem` is a product of arrows, so bicovariance keeps the relabeling
/// inside the arrow set.
fn shift_columns<T: Scalar>(lat: &GroupLattice, m: &Matrix<T>, elem: usize) -> Matrix<T> {
    let grp = lat.group();
    let n = lat.n_arrows();
    let inv = grp.inv(elem);
    let mut out = Matrix::zero(n);
    for hp in 0..n {
        let shifted = lat
            .arrow_index_of_elem(grp.conj(inv, lat.arrow_elem(hp)))
            .expect("bicovariance keeps conjugates in S");
        for h in 0..n {
            out[(h, hp)] = m[(h, shifted)].clone();
        }
    }
    out
}

/// Curvature of a connection, all sectors.
pub fn curvature<T: Scalar>(lat: &GroupLattice, c: &Connection<T>) -> CurvatureComponents<T> {
    let n = lat.n_arrows();
    let mut plaquette = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let b = lat.ad_inv(x, y);
            let per_site: Vec<Matrix<T>> =
                (0..lat.n_sites()).map(|g| c.pair_product(lat, x, b, g)).collect();
            plaquette.push(per_site);
        }
    }
    let zero_sites = || vec![Matrix::<T>::zero(n); lat.n_sites()];
    let quad_canonical = canonicalize_slots(
        lat,
        &plaquette,
        zero_sites,
        |a, b| a.iter().zip(b).map(|(x, y)| x.add(y)).collect(),
        |v, len, total| {
            let len_t = T::from_i64(len);
            v.iter().zip(total).map(|(x, t)| x.scale(&len_t).sub(t)).collect()
        },
    );
    let mut canonical = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let idx = x * n + y;
            let per_site: Vec<Matrix<T>> = match lat.slot_sector(x, y) {
                PairClass::Biangle => plaquette[idx]
                    .iter()
                    .map(|m| m.sub(&Matrix::identity(n)))
                    .collect(),
                PairClass::Triangle { h0 } => (0..lat.n_sites())
                    .map(|g| {
                        let m = plaquette[idx][g].sub(c.v(h0, g));
                        shift_columns(lat, &m, lat.arrow_elem(h0))
                    })
                    .collect(),
                PairClass::Quadrangle { chain, .. } => {
                    let g_elem = lat.chains()[chain].g;
                    quad_canonical[idx]
                        .iter()
                        .map(|m| shift_columns(lat, m, g_elem))
                        .collect()
                }
            };
            canonical.push(per_site);
        }
    }
    CurvatureComponents { n, plaquette, canonical }
}

/// Both Ricci contractions, per site. `primary` is
/// `Ric_{h,h'} = sum_{h''} R^{h''}_{h, h'', h'}`; `alternative` contracts
/// the slot's second index instead; `diagonal_trace` is the remaining
/// contraction `sum R^{h''}_{h'', h, h'}`, a diagnostic only.
#[derive(Debug, Clone)]
pub struct RicciTensors<T: Scalar> {
    pub primary: Vec<Matrix<T>>,
    pub alternative: Vec<Matrix<T>>,
    pub diagonal_trace: Vec<Matrix<T>>,
}

pub fn ricci<T: Scalar>(lat: &GroupLattice, cc: &CurvatureComponents<T>) -> RicciTensors<T> {
    let n = lat.n_arrows();
    let mut primary = Vec::with_capacity(lat.n_sites());
    let mut alternative = Vec::with_capacity(lat.n_sites());
    let mut diagonal_trace = Vec::with_capacity(lat.n_sites());
    for g in 0..lat.n_sites() {
        let mut ric = Matrix::zero(n);
        let mut alt = Matrix::zero(n);
        let mut diag = Matrix::zero(n);
        for h in 0..n {
            for hp in 0..n {
                let mut acc = T::zero();
                let mut acc_alt = T::zero();
                let mut acc_diag = T::zero();
                for hpp in 0..n {
                    acc = acc + cc.slot(hpp, hp, g)[(hpp, h)].clone();
                    acc_alt = acc_alt + cc.slot(hp, hpp, g)[(hpp, h)].clone();
                    acc_diag = acc_diag + cc.slot(h, hp, g)[(hpp, hpp)].clone();
                }
                ric[(h, hp)] = acc;
                alt[(h, hp)] = acc_alt;
                diag[(h, hp)] = acc_diag;
            }
        }
        primary.push(ric);
        alternative.push(alt);
        diagonal_trace.push(diag);
    }
    RicciTensors { primary, alternative, diagonal_trace }
}

/// `R(g) = sum (g^{-1})^{h,h'} Ric_{h,h'}` per site.
pub fn curvature_scalar<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    ric: &[Matrix<T>],
) -> Result<ScalarField<T>> {
    let inv = crate::metric::inverse_metric(lat, m)?;
    let n = lat.n_arrows();
    let values = (0..lat.n_sites())
        .map(|g| {
            let mut acc = T::zero();
            for h in 0..n {
                for hp in 0..n {
                    acc = acc + inv[g][(h, hp)].clone() * ric[g][(h, hp)].clone();
                }
            }
            acc
        })
        .collect();
    Ok(ScalarField { values })
}

/// Integrability isometries per plaquette: `B` for biangles, `T` for
/// triangles, `K` for ordered pairs of distinct chain members. Each is an
/// isometry of the site metric when the connection is compatible.
#[derive(Debug, Clone)]
pub struct IntegrabilityReport<T: Scalar> {
    /// Biangle in-order pairs `(a, b)` with their per-site matrices.
    pub biangle: Vec<((usize, usize), Vec<Matrix<T>>)>,
    /// Triangle in-order pairs with `T = M V_{h0}^{-1}` per site.
    pub triangle: Vec<((usize, usize), Vec<Matrix<T>>)>,
    /// `(chain, member_i, member_j) -> K = M_i M_j^{-1}` per site.
    pub quadrangle: Vec<((usize, usize, usize), Vec<Matrix<T>>)>,
    pub all_isometries: bool,
}

pub fn integrability_isometries<T: Scalar>(
    lat: &GroupLattice,
    m: &MetricField<T>,
    c: &Connection<T>,
) -> Result<IntegrabilityReport<T>> {
    if !crate::connection::is_compatible(lat, m, c) {
        return Err(Error::Connection("connection is not metric-compatible".into()));
    }
    let n_sites = lat.n_sites();
    let inv_v = |arrow: usize, g: usize| -> Result<Matrix<T>> {
        c.v(arrow, g).inverse().ok_or_else(|| {
            Error::Connection(format!(
                "singular transport matrix at site {} arrow {}",
                lat.group().name(g),
                lat.arrow_name(arrow)
            ))
        })
    };
    let mut all_isometries = true;
    let mut check = |mats: &[Matrix<T>]| {
        for (g, x) in mats.iter().enumerate() {
            if !m.at(g).congruence(x).sub(m.at(g)).is_negligible() {
                all_isometries = false;
            }
        }
    };

    let mut biangle = Vec::new();
    let mut triangle = Vec::new();
    let n = lat.n_arrows();
    for a in 0..n {
        for b in 0..n {
            match lat.pair_class(a, b) {
                PairClass::Biangle => {
                    let mats: Vec<Matrix<T>> =
                        (0..n_sites).map(|g| c.pair_product(lat, a, b, g)).collect();
                    check(&mats);
                    biangle.push(((a, b), mats));
                }
                PairClass::Triangle { h0 } => {
                    let mats: Vec<Matrix<T>> = (0..n_sites)
                        .map(|g| {
                            Ok(c.pair_product(lat, a, b, g).mul(&inv_v(h0, g)?))
                        })
                        .collect::<Result<_>>()?;
                    check(&mats);
                    triangle.push(((a, b), mats));
                }
                PairClass::Quadrangle { .. } => {}
            }
        }
    }

    let mut quadrangle = Vec::new();
    for (ci, chain) in lat.chains().iter().enumerate() {
        let products: Vec<Vec<Matrix<T>>> = chain
            .pairs
            .iter()
            .map(|&(a, b)| (0..n_sites).map(|g| c.pair_product(lat, a, b, g)).collect())
            .collect();
        for i in 0..chain.len() {
            for j in 0..chain.len() {
                if i == j {
                    continue;
                }
                let mats: Vec<Matrix<T>> = (0..n_sites)
                    .map(|g| {
                        let mj_inv = products[j][g].inverse().ok_or_else(|| {
                            Error::Connection("singular plaquette product".into())
                        })?;
                        Ok(products[i][g].mul(&mj_inv))
                    })
                    .collect::<Result<_>>()?;
                check(&mats);
                quadrangle.push(((ci, i, j), mats));
            }
        }
    }
    Ok(IntegrabilityReport { biangle, triangle, quadrangle, all_isometries })
}

/// A basic vector field: one arrow choice per site.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicVectorField {
    pub s: Vec<usize>,
}

impl BasicVectorField {
    pub fn constant(lat: &GroupLattice, arrow: usize) -> Self {
        BasicVectorField { s: vec![arrow; lat.n_sites()] }
    }
}

/// `Q(X, Y)` sitewise via the canonical component contraction
/// `sum_h Q^h_{s_X, s_Y} ell_h`.
pub fn torsion_on_fields<T: Scalar>(
    lat: &GroupLattice,
    tc: &TorsionComponents<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
) -> VectorField<T> {
    VectorField {
        values: (0..lat.n_sites())
            .map(|g| tc.slot(x.s[g], y.s[g], g).to_vec())
            .collect(),
    }
}

/// Transport form of the torsion where it is single-pair geometric:
/// biangle `X + V_X R_{X*} Y`, triangle additionally `- Z`. Quadrangle
/// sites fall back to the canonical contraction.
pub fn torsion_on_fields_transport<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    tc: &TorsionComponents<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
) -> VectorField<T> {
    let n = lat.n_arrows();
    let values = (0..lat.n_sites())
        .map(|g| {
            let (a, b_slot) = (x.s[g], y.s[g]);
            let b = lat.ad_inv(a, b_slot);
            match lat.slot_sector(a, b_slot) {
                PairClass::Biangle | PairClass::Triangle { .. } => {
                    let mut out = c.v(a, g).col(b);
                    out[a] = out[a].clone() + T::one();
                    if let PairClass::Triangle { h0 } = lat.slot_sector(a, b_slot) {
                        out[h0] = out[h0].clone() - T::one();
                    }
                    out
                }
                PairClass::Quadrangle { .. } => tc.slot(a, b_slot, g).to_vec(),
            }
        })
        .collect::<Vec<Vec<T>>>();
    let _ = n;
    VectorField { values }
}

/// Four-field quadrangle torsion difference
/// `X + V_X R_{X*} Y - Xh - V_{Xh} R_{Xh*} Yh`, defined at sites where both
/// slots lie in the same chain.
pub fn torsion_on_fields_diff<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
    xh: &BasicVectorField,
    yh: &BasicVectorField,
) -> Result<VectorField<T>> {
    let values = (0..lat.n_sites())
        .map(|g| {
            let (a, sy) = (x.s[g], y.s[g]);
            let (ah, syh) = (xh.s[g], yh.s[g]);
            let (c1, c2) = (lat.slot_sector(a, sy), lat.slot_sector(ah, syh));
            match (c1, c2) {
                (
                    PairClass::Quadrangle { chain: ca, .. },
                    PairClass::Quadrangle { chain: cb, .. },
                ) if ca == cb => {
                    let b = lat.ad_inv(a, sy);
                    let bh = lat.ad_inv(ah, syh);
                    let mut out = c.v(a, g).col(b);
                    out[a] = out[a].clone() + T::one();
                    let sub = c.v(ah, g).col(bh);
                    for (k, v) in out.iter_mut().enumerate() {
                        *v = v.clone() - sub[k].clone();
                    }
                    out[ah] = out[ah].clone() - T::one();
                    Ok(out)
                }
                _ => Err(Error::Lattice(format!(
                    "fields do not span a common quadrangle chain at site {}",
                    lat.group().name(g)
                ))),
            }
        })
        .collect::<Result<Vec<Vec<T>>>>()?;
    Ok(VectorField { values })
}

/// `R(X, Y)(Z)` sitewise via the canonical contraction
/// `sum_h R^h_{s_Z, s_X, s_Y} ell_h`.
pub fn curvature_on_fields<T: Scalar>(
    lat: &GroupLattice,
    cc: &CurvatureComponents<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
    z: &BasicVectorField,
) -> VectorField<T> {
    VectorField {
        values: (0..lat.n_sites())
            .map(|g| cc.slot(x.s[g], y.s[g], g).col(z.s[g]))
            .collect(),
    }
}

/// Transport form of the curvature on basic fields: biangle
/// `V_X V_{R_{X*}Y} Z - Z`, triangle `(V_X V_{R_{X*}Y} - V_W) R_{W*} Z`.
/// Quadrangle sites fall back to the canonical contraction.
pub fn curvature_on_fields_transport<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    cc: &CurvatureComponents<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
    z: &BasicVectorField,
) -> VectorField<T> {
    let grp = lat.group();
    let values = (0..lat.n_sites())
        .map(|g| {
            let (a, sy, sz) = (x.s[g], y.s[g], z.s[g]);
            let b = lat.ad_inv(a, sy);
            let m = c.pair_product(lat, a, b, g);
            match lat.slot_sector(a, sy) {
                PairClass::Biangle => {
                    // Transported Z returns to g; subtract Z(g).
                    let mut out = m.col(sz);
                    out[sz] = out[sz].clone() - T::one();
                    out
                }
                PairClass::Triangle { h0 } => {
                    let shifted = lat
                        .arrow_index_of_elem(grp.conj(
                            grp.inv(lat.arrow_elem(h0)),
                            lat.arrow_elem(sz),
                        ))
                        .expect("bicovariance");
                    m.sub(c.v(h0, g)).col(shifted)
                }
                PairClass::Quadrangle { .. } => cc.slot(a, sy, g).col(sz),
            }
        })
        .collect();
    VectorField { values }
}

/// Four-field quadrangle curvature difference
/// `(V_X V_{R_{X*}Y} - V_{Xh} V_{R_{Xh*}Yh}) R R Z` on common chains.
pub fn curvature_on_fields_diff<T: Scalar>(
    lat: &GroupLattice,
    c: &Connection<T>,
    x: &BasicVectorField,
    y: &BasicVectorField,
    xh: &BasicVectorField,
    yh: &BasicVectorField,
    z: &BasicVectorField,
) -> Result<VectorField<T>> {
    let grp = lat.group();
    let values = (0..lat.n_sites())
        .map(|g| {
            let (a, sy) = (x.s[g], y.s[g]);
            let (ah, syh) = (xh.s[g], yh.s[g]);
            match (lat.slot_sector(a, sy), lat.slot_sector(ah, syh)) {
                (
                    PairClass::Quadrangle { chain: ca, .. },
                    PairClass::Quadrangle { chain: cb, .. },
                ) if ca == cb => {
                    let b = lat.ad_inv(a, sy);
                    let bh = lat.ad_inv(ah, syh);
                    let diff = c
                        .pair_product(lat, a, b, g)
                        .sub(&c.pair_product(lat, ah, bh, g));
                    let g_elem = lat.chains()[ca].g;
                    let shifted = lat
                        .arrow_index_of_elem(grp.conj(grp.inv(g_elem), lat.arrow_elem(z.s[g])))
                        .expect("bicovariance");
                    Ok(diff.col(shifted))
                }
                _ => Err(Error::Lattice(format!(
                    "fields do not span a common quadrangle chain at site {}",
                    lat.group().name(g)
                ))),
            }
        })
        .collect::<Result<Vec<Vec<T>>>>()?;
    Ok(VectorField { values })
}
