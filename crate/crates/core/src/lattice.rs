//! Finite and periodic group construction, bicovariance verification, and
//! the classification of ordered arrow pairs into biangles, triangles and
//! quadrangle chains.
//!
//! Conventions fixed here and relied on by every other module:
//! * element `0` is the identity for all built-in constructions;
//! * symmetric-group multiplication composes left to right,
//!   `(s t)(x) = t(s(x))`;
//! * the ordered pair `(h1, h2)` is classified by the product `h1 h2`,
//!   while the 2-form slot `(h1, h2)` belongs to the sector `h2 h1`. The
//!   two views are linked by the bijection `pair (a, b) <-> slot (a, ad(a) b)`.

use crate::error::{Error, Result};
use std::collections::HashMap;

/// Group construction request.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Cyclic(u32),
    Symmetric(u32),
    Torus(Vec<u32>),
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone)]
enum Repr {
    Table { table: Vec<u32>, inv: Vec<u32> },
    Torus { moduli: Vec<u32> },
}

/// A finite group with a fixed element enumeration.
#[derive(Debug, Clone)]
pub struct Group {
    order: usize,
    identity: usize,
    repr: Repr,
    names: Vec<String>,
    descriptor: String,
}

impl Group {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table { table, .. } => table[a * self.order + b] as usize,
            Repr::Torus { moduli } => {
                let xa = torus_coords(a, moduli);
                let xb = torus_coords(b, moduli);
                let sum: Vec<u32> =
                    xa.iter().zip(&xb).zip(moduli).map(|((x, y), m)| (x + y) % m).collect();
                torus_index(&sum, moduli)
            }
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Table { inv, .. } => inv[a] as usize,
            Repr::Torus { moduli } => {
                let xa = torus_coords(a, moduli);
                let neg: Vec<u32> = xa.iter().zip(moduli).map(|(x, m)| (m - x) % m).collect();
                torus_index(&neg, moduli)
            }
        }
    }

    /// `a b a^{-1}`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn torus_moduli(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Torus { moduli } => Some(moduli),
            _ => None,
        }
    }

    /// Torus coordinates of an element, when the group is a torus.
    pub fn coords(&self, a: usize) -> Option<Vec<u32>> {
        self.torus_moduli().map(|m| torus_coords(a, m))
    }
}

fn torus_coords(mut idx: usize, moduli: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(moduli.len());
    for &m in moduli {
        out.push((idx % m as usize) as u32);
        idx /= m as usize;
    }
    out
}

fn torus_index(coords: &[u32], moduli: &[u32]) -> usize {
    let mut idx = 0usize;
    for (i, &c) in coords.iter().enumerate().rev() {
        idx = idx * moduli[i] as usize + c as usize;
    }
    idx
}

/// Builds and validates a group from a descriptor.
pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Cyclic(n) => {
            let n = *n as usize;
            if n == 0 {
                return Err(Error::Group("cyclic group order must be positive".into()));
            }
            let table: Vec<u32> = (0..n)
                .flat_map(|a| (0..n).map(move |b| ((a + b) % n) as u32))
                .collect();
            let inv: Vec<u32> = (0..n).map(|a| ((n - a) % n) as u32).collect();
            Ok(Group {
                order: n,
                identity: 0,
                repr: Repr::Table { table, inv },
                names: (0..n).map(|a| a.to_string()).collect(),
                descriptor: format!("cyclic:{n}"),
            })
        }
        GroupSpec::Symmetric(n) => {
            let n = *n as usize;
            if n == 0 || n > 5 {
                return Err(Error::Group(format!("symmetric({n}) unsupported, need 1 <= n <= 5")));
            }
            let mut perms = all_permutations(n);
            // Identity first, then by number of moved points, then by the
            // cycle-notation string; this reproduces the standard listing
            // e,(12),(13),(23),(123),(132) for n = 3.
            perms.sort_by_key(|p| {
                let moved = p.iter().enumerate().filter(|(i, &v)| *i != v as usize).count();
                (moved, cycle_notation(p))
            });
            let order = perms.len();
            let index: HashMap<Vec<u8>, usize> =
                perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
            let mut table = vec![0u32; order * order];
            for (a, pa) in perms.iter().enumerate() {
                for (b, pb) in perms.iter().enumerate() {
                    // Left-to-right composition: x -> pb(pa(x)).
                    let prod: Vec<u8> = (0..n).map(|x| pb[pa[x] as usize]).collect();
                    table[a * order + b] = index[&prod] as u32;
                }
            }
            let mut inv = vec![0u32; order];
            for (a, pa) in perms.iter().enumerate() {
                let mut q = vec![0u8; n];
                for (x, &y) in pa.iter().enumerate() {
                    q[y as usize] = x as u8;
                }
                inv[a] = index[&q] as u32;
            }
            Ok(Group {
                order,
                identity: 0,
                repr: Repr::Table { table, inv },
                names: perms.iter().map(|p| cycle_notation(p)).collect(),
                descriptor: format!("symmetric:{n}"),
            })
        }
        GroupSpec::Torus(moduli) => {
            if moduli.is_empty() {
                return Err(Error::Group("torus needs at least one modulus".into()));
            }
            if let Some(&m) = moduli.iter().find(|&&m| m < 3) {
                return Err(Error::Group(format!(
                    "torus modulus {m} < 3 would wrap unit steps into biangles or triangles"
                )));
            }
            let order: usize = moduli.iter().map(|&m| m as usize).product();
            let names = (0..order)
                .map(|i| {
                    let c = torus_coords(i, moduli);
                    format!("[{}]", c.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                })
                .collect();
            Ok(Group {
                order,
                identity: 0,
                repr: Repr::Torus { moduli: moduli.clone() },
                names,
                descriptor: format!(
                    "torus:[{}]",
                    moduli.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                ),
            })
        }
        GroupSpec::Explicit(rows) => {
            let order = rows.len();
            if order == 0 || rows.iter().any(|r| r.len() != order) {
                return Err(Error::Group("explicit table must be square and non-empty".into()));
            }
            if order > 200 {
                return Err(Error::Group("explicit tables supported up to order 200".into()));
            }
            for row in rows {
                if row.iter().any(|&v| v >= order) {
                    return Err(Error::Group("table entry out of range".into()));
                }
            }
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if rows[rows[a][b]][c] != rows[a][rows[b][c]] {
                            return Err(Error::Group(format!(
                                "table is not associative at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
            let identity = (0..order)
                .find(|&e| (0..order).all(|a| rows[e][a] == a && rows[a][e] == a))
                .ok_or_else(|| Error::Group("table has no identity".into()))?;
            let mut inv = vec![0u32; order];
            for a in 0..order {
                let ia = (0..order)
                    .find(|&b| rows[a][b] == identity && rows[b][a] == identity)
                    .ok_or_else(|| Error::Group(format!("element {a} has no inverse")))?;
                inv[a] = ia as u32;
            }
            let table: Vec<u32> =
                rows.iter().flat_map(|r| r.iter().map(|&v| v as u32)).collect();
            Ok(Group {
                order,
                identity,
                repr: Repr::Table { table, inv },
                names: (0..order).map(|a| a.to_string()).collect(),
                descriptor: "table".into(),
            })
        }
    }
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current: Vec<u8> = (0..n as u8).collect();
    permute(&mut current, 0, &mut out);
    out
}

fn permute(v: &mut Vec<u8>, k: usize, out: &mut Vec<Vec<u8>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Cycle notation with 1-based points, e.g. `(12)`, `(132)`, `e`.
pub fn cycle_notation(perm: &[u8]) -> String {
    let n = perm.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || perm[start] as usize == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start] as usize;
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x] as usize;
        }
        out.push('(');
        for p in cycle {
            out.push_str(&(p + 1).to_string());
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// Classification of the ordered pair `(h1, h2)` by its product `h1 h2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    /// `h1 h2 = e`.
    Biangle,
    /// `h1 h2 = h0` in `S`; `h0` is an arrow index.
    Triangle { h0: usize },
    /// `h1 h2 = g` outside `S_e`; member of the chain for `g`.
    Quadrangle { chain: usize, member: usize },
}

/// All ordered pairs multiplying to the same `g` outside `S_e`.
#[derive(Debug, Clone)]
pub struct Chain {
    /// Element id of the common product.
    pub g: usize,
    /// In-order pairs `(a, b)` of arrow indices with `h_a h_b = g`,
    /// lexicographically ordered.
    pub pairs: Vec<(usize, usize)>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// A bicovariant group lattice: the group, the arrow set `S`, and the full
/// pair classification with quadrangle chains.
#[derive(Debug, Clone)]
pub struct GroupLattice {
    group: Group,
    arrows: Vec<usize>,
    arrow_of_elem: HashMap<usize, usize>,
    ad: Vec<Vec<usize>>,
    ad_inv: Vec<Vec<usize>>,
    class: Vec<PairClass>,
    chains: Vec<Chain>,
}

/// Checks closure of `arrows` under `ad(h)` and `ad(h^{-1})` for all
/// `h` in `arrows`. Violations are `(h, h', ad(h)h')` name triples.
pub fn check_bicovariance(
    group: &Group,
    arrows: &[usize],
) -> Result<std::result::Result<(), Vec<(String, String, String)>>> {
    if arrows.is_empty() {
        return Err(Error::Lattice("arrow set must be non-empty".into()));
    }
    if arrows.contains(&group.identity()) {
        return Err(Error::Lattice("arrow set must not contain the identity".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &a in arrows {
        if a >= group.order() {
            return Err(Error::Lattice(format!("arrow id {a} out of range")));
        }
        if !seen.insert(a) {
            return Err(Error::Lattice(format!("duplicate arrow {}", group.name(a))));
        }
    }
    let in_s: std::collections::HashSet<usize> = arrows.iter().copied().collect();
    let mut violations = Vec::new();
    for &h in arrows {
        for &hp in arrows {
            for conjugator in [h, group.inv(h)] {
                let c = group.conj(conjugator, hp);
                if !in_s.contains(&c) {
                    violations.push((
                        group.name(conjugator).to_string(),
                        group.name(hp).to_string(),
                        group.name(c).to_string(),
                    ));
                }
            }
        }
    }
    violations.sort();
    violations.dedup();
    Ok(if violations.is_empty() { Ok(()) } else { Err(violations) })
}

/// Builds the lattice: verifies bicovariance and classifies every ordered
/// pair, grouping quadrangles into chains.
pub fn classify(group: Group, arrows: Vec<usize>) -> Result<GroupLattice> {
    match check_bicovariance(&group, &arrows)? {
        Ok(()) => {}
        Err(violations) => return Err(Error::Bicovariance(violations)),
    }
    let n = arrows.len();
    let arrow_of_elem: HashMap<usize, usize> =
        arrows.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let ad: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).map(|j| arrow_of_elem[&group.conj(arrows[i], arrows[j])]).collect())
        .collect();
    let ad_inv: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| arrow_of_elem[&group.conj(group.inv(arrows[i]), arrows[j])])
                .collect()
        })
        .collect();

    let mut class = vec![PairClass::Biangle; n * n];
    let mut chains: Vec<Chain> = Vec::new();
    let mut chain_of_g: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            let p = group.mul(arrows[i], arrows[j]);
            class[i * n + j] = if p == group.identity() {
                PairClass::Biangle
            } else if let Some(&h0) = arrow_of_elem.get(&p) {
                PairClass::Triangle { h0 }
            } else {
                let chain = *chain_of_g.entry(p).or_insert_with(|| {
                    chains.push(Chain { g: p, pairs: Vec::new() });
                    chains.len() - 1
                });
                chains[chain].pairs.push((i, j));
                PairClass::Quadrangle { chain, member: chains[chain].pairs.len() - 1 }
            };
        }
    }
    Ok(GroupLattice { group, arrows, arrow_of_elem, ad, ad_inv, class, chains })
}

impl GroupLattice {
    pub fn group(&self) -> &Group {
        &self.group
    }

    /// Number of arrows `|S|` (the lattice dimension).
    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn n_sites(&self) -> usize {
        self.group.order()
    }

    /// Element id of arrow `i`.
    pub fn arrow_elem(&self, i: usize) -> usize {
        self.arrows[i]
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn arrow_name(&self, i: usize) -> &str {
        self.group.name(self.arrows[i])
    }

    pub fn arrow_index_of_elem(&self, elem: usize) -> Option<usize> {
        self.arrow_of_elem.get(&elem).copied()
    }

    /// Site reached by following arrow `i` from `site`: `site * h_i`.
    pub fn step(&self, site: usize, i: usize) -> usize {
        self.group.mul(site, self.arrows[i])
    }

    /// Arrow index of `ad(h_i) h_j = h_i h_j h_i^{-1}`.
    pub fn ad(&self, i: usize, j: usize) -> usize {
        self.ad[i][j]
    }

    /// Arrow index of `ad(h_i^{-1}) h_j`.
    pub fn ad_inv(&self, i: usize, j: usize) -> usize {
        self.ad_inv[i][j]
    }

    /// Classification of the in-order pair `(h_i, h_j)` by `h_i h_j`.
    pub fn pair_class(&self, i: usize, j: usize) -> PairClass {
        self.class[i * self.arrows.len() + j]
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Sector of the 2-form slot `(i, j)`, i.e. the class of `h_j h_i`.
    /// Slot `(i, j)` corresponds to the in-order pair `(i, ad(h_i^{-1}) h_j)`.
    pub fn slot_sector(&self, i: usize, j: usize) -> PairClass {
        self.pair_class(i, self.ad_inv[i][j])
    }

    /// Slot carrying the canonical component of an in-order pair `(a, b)`:
    /// `(a, ad(h_a) h_b)`.
    pub fn slot_of_pair(&self, a: usize, b: usize) -> (usize, usize) {
        (a, self.ad[a][b])
    }

    /// In-order pair owning slot `(i, j)`.
    pub fn pair_of_slot(&self, i: usize, j: usize) -> (usize, usize) {
        (i, self.ad_inv[i][j])
    }

    /// Arrow indices whose element lies in `S_(1) = S^2 /\ S`.
    pub fn s1(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.n_arrows())
            .flat_map(|i| (0..self.n_arrows()).map(move |j| (i, j)))
            .filter_map(|(i, j)| match self.pair_class(i, j) {
                PairClass::Triangle { h0 } => Some(h0),
                _ => None,
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn count_biangles(&self) -> usize {
        self.class.iter().filter(|c| matches!(c, PairClass::Biangle)).count()
    }

    pub fn count_triangles(&self) -> usize {
        self.class.iter().filter(|c| matches!(c, PairClass::Triangle { .. })).count()
    }

    pub fn count_quadrangles(&self) -> usize {
        self.class.iter().filter(|c| matches!(c, PairClass::Quadrangle { .. })).count()
    }

    /// True when the arrow set generates the group (reported, not required).
    pub fn arrows_generate_group(&self) -> bool {
        let mut reached = vec![false; self.group.order()];
        let mut stack = vec![self.group.identity()];
        reached[self.group.identity()] = true;
        let mut count = 1;
        while let Some(g) = stack.pop() {
            for i in 0..self.n_arrows() {
                let next = self.step(g, i);
                if !reached[next] {
                    reached[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == self.group.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Group {
        build_group(&GroupSpec::Symmetric(3)).unwrap()
    }

    #[test]
    fn s3_enumeration_and_order() {
        let g = s3();
        assert_eq!(g.order(), 6);
        let names: Vec<&str> = (0..6).map(|i| g.name(i)).collect();
        assert_eq!(names, vec!["e", "(12)", "(13)", "(23)", "(123)", "(132)"]);
    }

    #[test]
    fn s3_left_to_right_composition() {
        let g = s3();
        let e132 = g.element_by_name("(132)").unwrap();
        let e12 = g.element_by_name("(12)").unwrap();
        let e13 = g.element_by_name("(13)").unwrap();
        // (132)(12) = (13) under left-to-right composition.
        assert_eq!(g.mul(e132, e12), e13);
        // ad((12))(13) = (23).
        assert_eq!(g.name(g.conj(e12, e13)), "(23)");
        // ad(h)h = h.
        assert_eq!(g.conj(e12, e12), e12);
    }

    #[test]
    fn torus_arithmetic() {
        let g = build_group(&GroupSpec::Torus(vec![5, 5])).unwrap();
        assert_eq!(g.order(), 25);
        let a = g.element_by_name("[4,0]").unwrap();
        let b = g.element_by_name("[1,0]").unwrap();
        assert_eq!(g.mul(a, b), g.identity());
        assert!(build_group(&GroupSpec::Torus(vec![2, 5])).is_err());
    }

    #[test]
    fn explicit_table_validation() {
        // Z2 as an explicit table.
        let z2 = build_group(&GroupSpec::Explicit(vec![vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(z2.order(), 2);
        // Broken associativity.
        let bad = GroupSpec::Explicit(vec![
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 1, 0],
        ]);
        assert!(build_group(&bad).is_err());
    }

    #[test]
    fn bicovariance_cases() {
        let g = s3();
        let transpositions: Vec<usize> =
            ["(12)", "(13)", "(23)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        assert!(check_bicovariance(&g, &transpositions).unwrap().is_ok());

        // {(12), (123)} is not closed: ad((12))(123) = (132).
        let bad: Vec<usize> =
            ["(12)", "(123)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        let violations = check_bicovariance(&g, &bad).unwrap().unwrap_err();
        assert!(violations.contains(&("(12)".into(), "(123)".into(), "(132)".into())));

        let z4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        assert!(check_bicovariance(&z4, &[1, 2]).unwrap().is_ok());
        assert!(check_bicovariance(&z4, &[0, 1]).is_err());
    }

    #[test]
    fn z3_classification() {
        let g = build_group(&GroupSpec::Cyclic(3)).unwrap();
        let lat = classify(g, vec![1, 2]).unwrap();
        assert_eq!(lat.count_biangles(), 2);
        assert_eq!(lat.count_triangles(), 2);
        assert_eq!(lat.count_quadrangles(), 0);
        assert_eq!(lat.pair_class(0, 1), PairClass::Biangle);
        assert_eq!(lat.pair_class(1, 0), PairClass::Biangle);
        assert_eq!(lat.pair_class(0, 0), PairClass::Triangle { h0: 1 });
        assert_eq!(lat.pair_class(1, 1), PairClass::Triangle { h0: 0 });
    }

    #[test]
    fn z4_12_classification() {
        let g = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let lat = classify(g, vec![1, 2]).unwrap();
        // One biangle (2,2), one triangle (1,1)->2, one chain for g=3 with
        // pairs (1,2) and (2,1).
        assert_eq!(lat.pair_class(1, 1), PairClass::Biangle);
        assert_eq!(lat.pair_class(0, 0), PairClass::Triangle { h0: 1 });
        assert_eq!(lat.chains().len(), 1);
        let chain = &lat.chains()[0];
        assert_eq!(chain.g, 3);
        assert_eq!(chain.pairs, vec![(0, 1), (1, 0)]);
        assert_eq!(lat.count_biangles(), 1);
        assert_eq!(lat.count_triangles(), 1);
        assert_eq!(lat.count_quadrangles(), 2);
    }

    #[test]
    fn torus_classification() {
        let g = build_group(&GroupSpec::Torus(vec![5, 5])).unwrap();
        let a1 = g.element_by_name("[1,0]").unwrap();
        let a2 = g.element_by_name("[0,1]").unwrap();
        let lat = classify(g, vec![a1, a2]).unwrap();
        assert_eq!(lat.count_biangles(), 0);
        assert_eq!(lat.count_triangles(), 0);
        // Chains: (1,1)->[2,0] len 1, (1,2)+(2,1)->[1,1] len 2, (2,2)->[0,2].
        assert_eq!(lat.chains().len(), 3);
        let diag = lat
            .chains()
            .iter()
            .find(|c| lat.group().name(c.g) == "[1,1]")
            .expect("diagonal chain");
        assert_eq!(diag.len(), 2);
    }

    #[test]
    fn s3_transposition_chains_have_length_three() {
        let g = s3();
        let arrows: Vec<usize> =
            ["(12)", "(13)", "(23)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        let lat = classify(g, arrows).unwrap();
        // Products of two distinct transpositions are the two 3-cycles,
        // each with a chain of length 3; squares are biangles.
        assert_eq!(lat.count_biangles(), 3);
        assert_eq!(lat.count_triangles(), 0);
        assert_eq!(lat.chains().len(), 2);
        for chain in lat.chains() {
            assert_eq!(chain.len(), 3);
        }
    }

    #[test]
    fn slot_pair_bijection() {
        let g = s3();
        let arrows: Vec<usize> =
            ["(12)", "(13)", "(23)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        let lat = classify(g, arrows).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                let (x, y) = lat.slot_of_pair(a, b);
                assert_eq!(lat.pair_of_slot(x, y), (a, b));
                // Slot sector product h_y h_x equals h_a h_b.
                let grp = lat.group();
                assert_eq!(
                    grp.mul(lat.arrow_elem(y), lat.arrow_elem(x)),
                    grp.mul(lat.arrow_elem(a), lat.arrow_elem(b))
                );
            }
        }
    }

    #[test]
    fn ad_is_a_permutation_of_arrows() {
        let g = s3();
        let arrows: Vec<usize> =
            ["(12)", "(13)", "(23)"].iter().map(|n| g.element_by_name(n).unwrap()).collect();
        let lat = classify(g, arrows).unwrap();
        for i in 0..3 {
            let mut image: Vec<usize> = (0..3).map(|j| lat.ad(i, j)).collect();
            image.sort_unstable();
            assert_eq!(image, vec![0, 1, 2]);
        }
    }

    #[test]
    fn generation_reported_not_required() {
        let z4 = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let lat = classify(z4, vec![2]).unwrap();
        assert!(!lat.arrows_generate_group());
        let z4b = build_group(&GroupSpec::Cyclic(4)).unwrap();
        let lat2 = classify(z4b, vec![1, 2]).unwrap();
        assert!(lat2.arrows_generate_group());
    }
}
