//! Face lattices of matroid polytopes and the polytope census.
//!
//! A lattice is stored as its vertex–facet incidences; the intermediate faces
//! are intersections of facets and are rebuilt on demand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::chirotope::Chirotope;
use crate::covectors::{is_acyclic, is_matroid_polytope, nonnegative_cocircuit_zero_sets};
use crate::enumerate::EnumerationReport;
use crate::error::{Error, Result};
use crate::solve::{class_seed, realize, Budget, SolveOutcome, UnknownReason};
use crate::symmetry::{canonical_form, reorient, Group};
use crate::tuple::{elements_of, tuple_space};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub vertices: usize,
    /// Facets as vertex bitmasks, sorted.
    pub facets: Vec<u32>,
    pub canonical_code: Vec<u8>,
}

impl FaceLattice {
    pub fn from_facets(vertices: usize, facets: &[u32]) -> FaceLattice {
        let mut facets = facets.to_vec();
        facets.sort_unstable();
        facets.dedup();
        let canonical_code = lattice_code(vertices, &facets);
        FaceLattice {
            vertices,
            facets,
            canonical_code,
        }
    }

    fn all(&self) -> u32 {
        low_mask(self.vertices)
    }

    /// Intersection of the facets containing `set`; the full vertex set when
    /// no facet does.
    pub fn closure(&self, set: u32) -> u32 {
        self.facets
            .iter()
            .filter(|&&f| f & set == set)
            .fold(self.all(), |acc, &f| acc & f)
    }

    pub fn is_face(&self, set: u32) -> bool {
        set == self.all() || self.closure(set) == set
    }

    /// Every face, bottom and top included, sorted by size then mask.
    pub fn faces(&self) -> Vec<u32> {
        let mut faces = BTreeSet::from([0, self.all()]);
        let mut frontier: Vec<u32> = self.facets.clone();
        while let Some(f) = frontier.pop() {
            if faces.insert(f) {
                for &g in &self.facets {
                    frontier.push(f & g);
                }
            }
        }
        let mut out: Vec<u32> = faces.into_iter().collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    /// Number of faces of each dimension `-1, 0, …, r-1` for a rank-`r`
    /// polytope.
    pub fn face_counts(&self, r: usize) -> Vec<usize> {
        let faces = self.faces();
        let rank = self.rank_function(&faces);
        let mut counts = vec![0; r + 1];
        for k in rank {
            if k <= r {
                counts[k] += 1;
            }
        }
        counts
    }

    /// Length of the longest chain from the empty face, per face.
    fn rank_function(&self, faces: &[u32]) -> Vec<usize> {
        let mut rank = vec![0; faces.len()];
        for i in 0..faces.len() {
            for j in 0..i {
                if faces[j] & faces[i] == faces[j] && faces[j] != faces[i] {
                    rank[i] = rank[i].max(rank[j] + 1);
                }
            }
        }
        rank
    }
}

impl fmt::Display for FaceLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|&m| crate::covectors::format_set(m)).collect();
        write!(f, "{} vertices; facets {}", self.vertices, facets.join(" "))
    }
}

fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Facets are the zero sets of the nonnegative cocircuits.
pub fn face_lattice(chi: &Chirotope) -> Result<FaceLattice> {
    if !is_matroid_polytope(chi) {
        return Err(Error::NotMatroidPolytope);
    }
    Ok(FaceLattice::from_facets(chi.n(), &nonnegative_cocircuit_zero_sets(chi)))
}

pub fn canonical_lattice(fl: &FaceLattice) -> Vec<u8> {
    lattice_code(fl.vertices, &fl.facets)
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    elements_of(mask).iter().fold(0, |acc, &v| acc | 1 << perm[v])
}

fn encode(vertices: usize, facets: &[u32]) -> Vec<u8> {
    let mut code = Vec::with_capacity(2 + 4 * facets.len());
    code.push(vertices as u8);
    code.push(facets.len() as u8);
    for f in facets {
        code.extend_from_slice(&f.to_be_bytes());
    }
    code
}

/// Vertex classes under iterated degree refinement: a vertex's colour is
/// refined by the multiset of (size, colour multiset) of its facets until
/// stable. Colours are ordered by their signatures, so the result is
/// isomorphism invariant.
fn refine(vertices: usize, facets: &[u32]) -> Vec<usize> {
    let mut colour = vec![0usize; vertices];
    let mut classes = 1;
    loop {
        let facet_sig: Vec<(u32, Vec<usize>)> = facets
            .iter()
            .map(|&f| {
                let mut cs: Vec<usize> = elements_of(f).iter().map(|&v| colour[v]).collect();
                cs.sort_unstable();
                (f.count_ones(), cs)
            })
            .collect();
        let sigs: Vec<(usize, Vec<&(u32, Vec<usize>)>)> = (0..vertices)
            .map(|v| {
                let mut s: Vec<&(u32, Vec<usize>)> = facets
                    .iter()
                    .zip(&facet_sig)
                    .filter(|(&f, _)| f & (1 << v) != 0)
                    .map(|(_, sig)| sig)
                    .collect();
                s.sort();
                (colour[v], s)
            })
            .collect();
        let distinct: BTreeMap<_, usize> = sigs.iter().cloned().map(|s| (s, 0)).collect();
        let index: BTreeMap<_, usize> = distinct.into_keys().enumerate().map(|(i, s)| (s, i)).collect();
        let next: Vec<usize> = sigs.iter().map(|s| index[s]).collect();
        let count = index.len();
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

/// Smallest sorted facet list over every relabeling that keeps the refined
/// colour classes in colour order.
fn lattice_code(vertices: usize, facets: &[u32]) -> Vec<u8> {
    let colour = refine(vertices, facets);
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        groups.entry(c).or_default().push(v);
    }
    let groups: Vec<Vec<usize>> = groups.into_values().collect();
    let mut perm = vec![0usize; vertices];
    let mut best: Option<Vec<u32>> = None;
    let mut slots: Vec<usize> = Vec::new();
    let mut start = 0;
    for g in &groups {
        slots.push(start);
        start += g.len();
    }
    search_relabelings(&groups, &slots, 0, &mut perm, facets, &mut best);
    encode(vertices, &best.unwrap_or_default())
}

fn search_relabelings(
    groups: &[Vec<usize>],
    slots: &[usize],
    g: usize,
    perm: &mut [usize],
    facets: &[u32],
    best: &mut Option<Vec<u32>>,
) {
    if g == groups.len() {
        let mut image: Vec<u32> = facets.iter().map(|&f| permute_mask(f, perm)).collect();
        image.sort_unstable();
        if best.as_ref().is_none_or(|b| image < *b) {
            *best = Some(image);
        }
        return;
    }
    let members = &groups[g];
    let mut order: Vec<usize> = (0..members.len()).collect();
    permutations(&mut order, 0, &mut |order| {
        for (k, &i) in order.iter().enumerate() {
            perm[members[i]] = slots[g] + k;
        }
        search_relabelings(groups, slots, g + 1, perm, facets, best);
    });
}

fn permutations(items: &mut [usize], k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Every facet of a rank-`r` polytope has `r - 1` vertices.
pub fn is_simplicial(fl: &FaceLattice, r: usize) -> bool {
    fl.facets.iter().all(|f| f.count_ones() as usize + 1 == r)
}

/// Every vertex subset of size `⌊(r-1)/2⌋` is a face.
pub fn is_neighborly(fl: &FaceLattice, r: usize) -> bool {
    let k = (r.saturating_sub(1)) / 2;
    if k == 0 || k > fl.vertices {
        return true;
    }
    tuple_space(fl.vertices, k)
        .tuples()
        .iter()
        .all(|t| fl.is_face(t.mask()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Status {
    Realizable,
    Unknown(UnknownReason),
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Realizable => f.write_str("realizable"),
            Status::Unknown(r) => write!(f, "unknown ({r})"),
        }
    }
}

/// One relabeling class of acyclic chirotopes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    /// Relabel-only canonical sign string.
    pub canonical: String,
    /// Index of the reorientation class in the input report.
    pub class: usize,
    pub status: Status,
    /// Filled in by callers that store witnesses.
    pub witness: Option<String>,
    pub acyclic: bool,
    pub matroid_polytope: bool,
    pub uniform: bool,
    pub simplicial: bool,
    pub neighborly: bool,
    /// Canonical lattice code for matroid polytopes.
    pub lattice: Option<Vec<u8>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub n: usize,
    pub r: usize,
    pub classes: usize,
    pub realizable: usize,
    pub acyclic_classes: usize,
    pub matroid_polytopes: usize,
    pub polytope_types: usize,
    pub simplicial: usize,
    pub neighborly: usize,
}

impl CensusSummary {
    pub const HEADER: &'static str =
        "n\tr\tclasses\trealizable\tacyclic-relabeling-classes\tmatroid-polytopes\tpolytope-types\tsimplicial\tneighborly";

    pub fn tsv_row(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.n,
            self.r,
            self.classes,
            self.realizable,
            self.acyclic_classes,
            self.matroid_polytopes,
            self.polytope_types,
            self.simplicial,
            self.neighborly
        )
    }
}

#[derive(Clone, Debug)]
pub struct Census {
    pub records: Vec<CensusRecord>,
    pub summary: CensusSummary,
    /// Realization status of each input class, in report order.
    pub outcomes: Vec<SolveOutcome>,
}

/// Acyclic members of the reorientation class of `chi`, up to relabeling.
pub fn acyclic_relabeling_classes(chi: &Chirotope) -> Vec<Chirotope> {
    let n = chi.n();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    // reorienting a set and its complement gives the same oriented matroid
    for set in 0..1u32 << (n - 1) {
        let c = reorient(chi, set << 1);
        if !is_acyclic(&c) {
            continue;
        }
        let canon = canonical_form(&c, Group::Relabel);
        if seen.insert(canon.clone()) {
            out.push(Chirotope::from_sign_str(n, chi.r(), &canon).expect("canonical form of a chirotope"));
        }
    }
    out
}

fn class_records(index: usize, chi: &Chirotope, status: Status) -> Vec<CensusRecord> {
    acyclic_relabeling_classes(chi)
        .into_iter()
        .map(|c| {
            let lattice = face_lattice(&c).ok();
            let (simplicial, neighborly) = match &lattice {
                Some(fl) => (is_simplicial(fl, c.r()), is_neighborly(fl, c.r())),
                None => (false, false),
            };
            CensusRecord {
                canonical: c.sign_string(),
                class: index,
                status,
                witness: None,
                acyclic: true,
                matroid_polytope: lattice.is_some(),
                uniform: c.is_uniform(),
                simplicial,
                neighborly,
                lattice: lattice.map(|fl| fl.canonical_code),
            }
        })
        .collect()
}

/// Realizes every class, expands realizable and unknown classes alike into
/// acyclic relabeling classes, and counts the face lattices of the realized
/// matroid polytopes.
pub fn census(classes: &EnumerationReport, budget: &Budget) -> Result<Census> {
    let reps: Vec<Chirotope> = classes.chirotopes().collect();
    let per_class: Vec<Result<(SolveOutcome, Vec<CensusRecord>)>> = reps
        .par_iter()
        .enumerate()
        .map(|(i, chi)| {
            let b = Budget {
                seed: class_seed(&chi.sign_string(), budget.seed),
                ..budget.clone()
            };
            let outcome = realize(chi, &b)?;
            let status = match &outcome {
                SolveOutcome::Feasible { .. } => Status::Realizable,
                SolveOutcome::Unknown(r) => Status::Unknown(*r),
            };
            Ok((outcome, class_records(i, chi, status)))
        })
        .collect();
    let mut outcomes = Vec::with_capacity(reps.len());
    let mut records = Vec::new();
    for item in per_class {
        let (o, rs) = item?;
        outcomes.push(o);
        records.extend(rs);
    }
    let summary = summarize(classes.n, classes.r, &outcomes, &records);
    Ok(Census {
        records,
        summary,
        outcomes,
    })
}

pub fn summarize(n: usize, r: usize, outcomes: &[SolveOutcome], records: &[CensusRecord]) -> CensusSummary {
    // lattice code -> (simplicial, neighborly); realized members only
    let mut types: BTreeMap<&[u8], (bool, bool)> = BTreeMap::new();
    for rec in records {
        if let (Status::Realizable, Some(code)) = (rec.status, &rec.lattice) {
            types.insert(code, (rec.simplicial, rec.neighborly));
        }
    }
    CensusSummary {
        n,
        r,
        classes: outcomes.len(),
        realizable: outcomes.iter().filter(|o| o.is_feasible()).count(),
        acyclic_classes: records.len(),
        matroid_polytopes: records.iter().filter(|c| c.matroid_polytope).count(),
        polytope_types: types.len(),
        simplicial: types.values().filter(|t| t.0).count(),
        neighborly: types.values().filter(|t| t.1).count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::Realization;

    fn from_points(points: &[Vec<i64>]) -> Chirotope {
        Realization::from_points(points).unwrap().chirotope().unwrap()
    }

    #[test]
    fn triangle_and_square() {
        let tri = face_lattice(&Chirotope::all_plus(3, 3).unwrap()).unwrap();
        assert_eq!(tri.facets, vec![0b011, 0b101, 0b110]);
        let sq = face_lattice(&Chirotope::all_plus(4, 3).unwrap()).unwrap();
        let mut expect = vec![0b0011, 0b0110, 0b1100, 0b1001];
        expect.sort_unstable();
        assert_eq!(sq.facets, expect);
        assert_ne!(tri.canonical_code, sq.canonical_code);
        assert!(is_simplicial(&sq, 3) && is_neighborly(&sq, 3));
        assert_eq!(sq.face_counts(3), vec![1, 4, 4, 1]);
    }

    #[test]
    fn square_code_is_dihedral_invariant() {
        let sq = FaceLattice::from_facets(4, &[0b0011, 0b0110, 0b1100, 0b1001]);
        let rotations = [[1, 2, 3, 0], [3, 2, 1, 0], [0, 3, 2, 1]];
        for p in rotations {
            let facets: Vec<u32> = sq.facets.iter().map(|&f| permute_mask(f, &p)).collect();
            assert_eq!(FaceLattice::from_facets(4, &facets).canonical_code, sq.canonical_code);
        }
    }

    #[test]
    fn simplex_facets_omit_one_vertex() {
        for r in 2..6 {
            let fl = face_lattice(&Chirotope::all_plus(r, r).unwrap()).unwrap();
            assert_eq!(fl.facets.len(), r);
            assert!(fl.facets.iter().all(|f| f.count_ones() as usize == r - 1));
        }
    }

    #[test]
    fn square_pyramid_is_not_simplicial() {
        let chi = from_points(&[vec![0, 0, 0], vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let fl = face_lattice(&chi).unwrap();
        assert_eq!(fl.facets.len(), 5);
        assert!(!is_simplicial(&fl, 4));
    }

    #[test]
    fn cyclic_polytope_is_neighborly() {
        let pts: Vec<Vec<i64>> = (0..7i64).map(|t| vec![t, t * t, t * t * t, t * t * t * t]).collect();
        let fl = face_lattice(&from_points(&pts)).unwrap();
        assert!(is_simplicial(&fl, 5));
        assert!(is_neighborly(&fl, 5));
    }

    #[test]
    fn prism_over_tetrahedron_is_not_neighborly() {
        let tet = [[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let pts: Vec<Vec<i64>> = (0..2)
            .flat_map(|h| tet.iter().map(move |p| vec![p[0], p[1], p[2], h]))
            .collect();
        let fl = face_lattice(&from_points(&pts)).unwrap();
        // 4 prisms over triangles and 2 tetrahedra
        assert_eq!(fl.facets.len(), 6);
        assert!(!is_neighborly(&fl, 5));
    }

    #[test]
    fn non_polytope_is_rejected() {
        // a point inside a triangle
        let chi = from_points(&[vec![0, 0], vec![3, 0], vec![0, 3], vec![1, 1]]);
        assert!(matches!(face_lattice(&chi), Err(Error::NotMatroidPolytope)));
    }
}
