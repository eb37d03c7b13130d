//! Spherical buildings at desk scale.
//!
//! Two constructions share one interface: the flag complex of proper
//! nonzero subspaces of GF(p)^n (a thick building of type A_{n-1}), and the
//! Coxeter complex of any supported finite type as a thin building with a
//! single apartment.  Every apartment carries a chart onto one shared
//! Coxeter model, so convex hulls, opposition, and sphere censuses are
//! computed once in the model and transported.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::bits::Bits;
use crate::coxeter::CoxeterComplex;
use crate::error::Error;
use crate::gf::{proper_subspaces, Subspace};
use crate::poset::{Poset, SimplicialComplex};
use crate::Result;

/// Cap on apartment bookkeeping (frames times model simplices).
pub const MAX_CHART_ENTRIES: usize = 20_000_000;

pub enum BuildingKind {
    /// Flags of proper nonzero subspaces of GF(p)^n.
    TypeA { p: u8, n: usize, spaces: Vec<Subspace> },
    /// A Coxeter complex presented as a building with one apartment.
    Thin,
}

struct Apartment {
    /// Building simplex id for every model simplex id.
    chart: Vec<u32>,
    mask: Bits,
}

pub struct Building {
    name: String,
    pub model: CoxeterComplex,
    vertex_keys: Vec<String>,
    /// Vertex type: subspace dimension for TypeA, model vertex type index
    /// for thin buildings.
    vertex_type: Vec<u8>,
    /// All nonempty simplices as sorted vertex-id lists, ordered by
    /// (dimension, lexicographic); singletons come first, so the simplex id
    /// of vertex v is v.
    simplices: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    apartments: Vec<Apartment>,
    apts_of: Vec<Bits>,
    pub kind: BuildingKind,
}

impl Building {
    /// The building of GF(p)^n: vertices are proper nonzero subspaces,
    /// simplices are flags, apartments are frames (sets of n independent
    /// lines).
    pub fn type_a(p: u8, n: usize) -> Result<Building> {
        if !crate::gf::is_prime(p as u32) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        if !(2..=4).contains(&n) {
            return Err(Error::invalid("dimension n must be between 2 and 4"));
        }
        let model = CoxeterComplex::named(&format!("A{}", n - 1))?;
        let spaces = proper_subspaces(p, n);
        let vertex_keys: Vec<String> = spaces.iter().map(Subspace::key).collect();
        let vertex_type: Vec<u8> = spaces.iter().map(|s| s.dim() as u8).collect();

        // Flags via chains of the inclusion order; ids ascend with
        // (dimension, key), so chains are already sorted vertex lists.
        let mut rel = Vec::new();
        for (i, a) in spaces.iter().enumerate() {
            for (j, b) in spaces.iter().enumerate() {
                if a.dim() < b.dim() && b.contains(a) {
                    rel.push((i as u32, j as u32));
                }
            }
        }
        let incl = Poset::from_relations(vertex_keys.clone(), &rel)?;
        let mut simplices = incl.chains(crate::poset::MAX_FACES)?;
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<u32>, u32> =
            simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();

        // The subset of lines spanned by each model vertex: the prefix of
        // the chamber's line order, frame-independent.
        let perms = type_a_orders(&model);
        let nverts_model = (0..model.simplex_count() as u32)
            .take_while(|&i| model.dim_of(i) == 0)
            .count();
        let model_vertex_subset: Vec<u32> = (0..nverts_model as u32)
            .map(|v| {
                let s = model.simplex(v);
                let t = (0..n - 1).find(|&t| s.cotype & (1 << t) == 0).unwrap();
                let mut mask = 0u32;
                for &line in &perms[s.rep as usize][..=t] {
                    mask |= 1 << line;
                }
                mask
            })
            .collect();

        // Frames: independent n-sets of lines.
        let nlines = spaces.iter().take_while(|s| s.dim() == 1).count();
        let mut frames: Vec<Vec<usize>> = Vec::new();
        for combo in (0..nlines).combinations(n) {
            let mut sum = spaces[combo[0]].clone();
            for &l in &combo[1..] {
                sum = sum.sum(&spaces[l]);
            }
            if sum.dim() == n {
                frames.push(combo);
            }
        }
        if frames.len() * model.simplex_count() > MAX_CHART_ENTRIES {
            return Err(Error::budget(format!(
                "{} apartments times {} model simplices exceeds the chart budget",
                frames.len(),
                model.simplex_count()
            )));
        }

        let space_id: HashMap<&Subspace, u32> =
            spaces.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let mut apartments = Vec::with_capacity(frames.len());
        let mut apts_of = vec![Bits::new(frames.len()); simplices.len()];
        for (ai, frame) in frames.iter().enumerate() {
            // Building vertex for every nonempty proper subset of the frame.
            let mut vert_of_subset = vec![u32::MAX; 1 << n];
            for subset in 1u32..((1 << n) - 1) {
                let mut sum = Subspace::zero(p, n);
                for (pos, &line) in frame.iter().enumerate() {
                    if subset & (1 << pos) != 0 {
                        sum = sum.sum(&spaces[line]);
                    }
                }
                vert_of_subset[subset as usize] = *space_id
                    .get(&sum)
                    .expect("sums of independent lines are proper subspaces");
            }
            let mut chart = Vec::with_capacity(model.simplex_count());
            let mut mask = Bits::new(simplices.len());
            for ms in 0..model.simplex_count() as u32 {
                let mut verts: Vec<u32> = model
                    .vertex_ids(ms)
                    .iter()
                    .map(|&mv| vert_of_subset[model_vertex_subset[mv as usize] as usize])
                    .collect();
                verts.sort_unstable();
                let id = index[&verts];
                chart.push(id);
                mask.insert(id as usize);
                apts_of[id as usize].insert(ai);
            }
            apartments.push(Apartment { chart, mask });
        }
        Ok(Building {
            name: format!("A(p={p},n={n})"),
            model,
            vertex_keys,
            vertex_type,
            simplices,
            index,
            apartments,
            apts_of,
            kind: BuildingKind::TypeA { p, n, spaces },
        })
    }

    /// A Coxeter complex as a thin building: one apartment, identity chart.
    pub fn thin(type_name: &str) -> Result<Building> {
        let model = CoxeterComplex::named(type_name)?;
        let nverts = (0..model.simplex_count() as u32)
            .take_while(|&i| model.dim_of(i) == 0)
            .count();
        let vertex_keys: Vec<String> =
            (0..nverts as u32).map(|v| model.simplex_key(v)).collect();
        let vertex_type: Vec<u8> = (0..nverts as u32)
            .map(|v| {
                let cot = model.simplex(v).cotype;
                (0..model.system.rank).find(|&t| cot & (1 << t) == 0).unwrap() as u8
            })
            .collect();
        let mut simplices: Vec<Vec<u32>> =
            (0..model.simplex_count() as u32).map(|i| model.vertex_ids(i).to_vec()).collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: HashMap<Vec<u32>, u32> =
            simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let mut chart = Vec::with_capacity(model.simplex_count());
        let mut apts_of = vec![Bits::new(1); simplices.len()];
        for ms in 0..model.simplex_count() as u32 {
            let id = index[&model.vertex_ids(ms).to_vec()];
            chart.push(id);
            apts_of[id as usize].insert(0);
        }
        let mask = Bits::full(simplices.len());
        Ok(Building {
            name: format!("thin:{type_name}"),
            model,
            vertex_keys,
            vertex_type,
            simplices,
            index,
            apartments: vec![Apartment { chart, mask }],
            apts_of,
            kind: BuildingKind::Thin,
        })
    }

    /// Parse "A(p=2,n=3)" or "thin:B2".
    pub fn parse_name(name: &str) -> Result<Building> {
        if let Some(t) = name.strip_prefix("thin:") {
            return Building::thin(t);
        }
        let inner = name
            .strip_prefix("A(p=")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::invalid(format!("cannot parse building name {name:?}")))?;
        let (p, n) = inner
            .split_once(",n=")
            .ok_or_else(|| Error::invalid(format!("cannot parse building name {name:?}")))?;
        let p: u8 = p.parse().map_err(|_| Error::invalid("bad p"))?;
        let n: usize = n.parse().map_err(|_| Error::invalid("bad n"))?;
        Building::type_a(p, n)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> i64 {
        self.model.dim()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_keys.len()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex(&self, id: u32) -> &[u32] {
        &self.simplices[id as usize]
    }

    pub fn simplex_id(&self, verts: &[u32]) -> Option<u32> {
        self.index.get(verts).copied()
    }

    pub fn dim_of(&self, id: u32) -> i64 {
        self.simplices[id as usize].len() as i64 - 1
    }

    pub fn vertex_key(&self, v: u32) -> &str {
        &self.vertex_keys[v as usize]
    }

    pub fn vertex_type(&self, v: u32) -> u8 {
        self.vertex_type[v as usize]
    }

    pub fn simplex_key(&self, id: u32) -> String {
        self.simplices[id as usize]
            .iter()
            .map(|&v| self.vertex_keys[v as usize].as_str())
            .collect::<Vec<_>>()
            .join("<")
    }

    /// The subspace behind a vertex (TypeA only).
    pub fn subspace(&self, v: u32) -> Option<&Subspace> {
        match &self.kind {
            BuildingKind::TypeA { spaces, .. } => Some(&spaces[v as usize]),
            BuildingKind::Thin => None,
        }
    }

    pub fn vertex_of_subspace(&self, s: &Subspace) -> Option<u32> {
        let key = s.key();
        self.vertex_keys.iter().position(|k| *k == key).map(|i| i as u32)
    }

    pub fn chambers(&self) -> Vec<u32> {
        let top = self.model.system.rank;
        (0..self.simplices.len() as u32)
            .filter(|&i| self.simplices[i as usize].len() == top)
            .collect()
    }

    pub fn apartment_count(&self) -> usize {
        self.apartments.len()
    }

    pub fn apartment_mask(&self, a: usize) -> &Bits {
        &self.apartments[a].mask
    }

    pub fn apartment_chart(&self, a: usize) -> &[u32] {
        &self.apartments[a].chart
    }

    /// Apartments containing one simplex, as a bit set over apartment ids.
    pub fn apartment_bits(&self, id: u32) -> &Bits {
        &self.apts_of[id as usize]
    }

    /// Ids of apartments whose subcomplex contains every given simplex.
    pub fn apartments_containing(&self, ids: &[u32]) -> Vec<usize> {
        let mut bits = Bits::full(self.apartments.len());
        for &id in ids {
            bits.intersect_with(&self.apts_of[id as usize]);
        }
        bits.iter().collect()
    }

    /// Model simplex mapped into a given apartment.
    fn chart_inverse(&self, a: usize, id: u32) -> Option<u32> {
        self.apartments[a].chart.iter().position(|&b| b == id).map(|i| i as u32)
    }

    /// Opposition inside a fixed apartment, through its chart.
    pub fn opposite_in_apartment(&self, a: usize, id: u32) -> Result<u32> {
        let m = self
            .chart_inverse(a, id)
            .ok_or_else(|| Error::invalid("simplex not in apartment"))?;
        Ok(self.apartments[a].chart[self.model.opposite(m) as usize])
    }

    /// Opposition test.  Type A uses the linear-algebra criterion
    /// (complementary dimension types and trivial pairwise intersections);
    /// thin buildings use the model.  Both agree with the chart definition.
    pub fn are_opposite(&self, a: u32, b: u32) -> bool {
        match &self.kind {
            BuildingKind::Thin => self.opposite_in_apartment(0, a).is_ok_and(|x| x == b),
            BuildingKind::TypeA { n, spaces, .. } => {
                let fa = &self.simplices[a as usize];
                let fb = &self.simplices[b as usize];
                if fa.len() != fb.len() {
                    return false;
                }
                let dims_b: Vec<usize> =
                    fb.iter().rev().map(|&v| *n - spaces[v as usize].dim()).collect();
                let dims_a: Vec<usize> = fa.iter().map(|&v| spaces[v as usize].dim()).collect();
                if dims_a != dims_b {
                    return false;
                }
                fa.iter().zip(fb.iter().rev()).all(|(&va, &vb)| {
                    spaces[va as usize].intersect(&spaces[vb as usize]).dim() == 0
                })
            }
        }
    }

    /// Opposition decided purely through apartment charts; the definition
    /// the fast paths must agree with.
    pub fn are_opposite_via_charts(&self, a: u32, b: u32) -> bool {
        self.apartments_containing(&[a, b])
            .iter()
            .any(|&apt| self.opposite_in_apartment(apt, a).is_ok_and(|x| x == b))
    }

    /// All ordered opposite pairs, ascending.
    pub fn opposite_pairs(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for a in 0..self.simplices.len() as u32 {
            for b in 0..self.simplices.len() as u32 {
                if self.are_opposite(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Convex hull: transported from the model through the first common
    /// apartment.  Any common apartment gives the same answer.
    pub fn convex_hull(&self, ids: &[u32]) -> Result<(usize, Bits)> {
        let apts = self.apartments_containing(ids);
        let Some(&apt) = apts.first() else {
            return Err(Error::NoCommonApartment(format!(
                "{} simplices share no apartment",
                ids.len()
            )));
        };
        Ok((apt, self.hull_in_apartment(apt, ids)?))
    }

    pub fn hull_in_apartment(&self, apt: usize, ids: &[u32]) -> Result<Bits> {
        let model_ids: Vec<u32> = ids
            .iter()
            .map(|&id| {
                self.chart_inverse(apt, id)
                    .ok_or_else(|| Error::invalid("simplex not in apartment"))
            })
            .collect::<Result<_>>()?;
        let model_hull = self.model.convex_hull(&model_ids);
        let mut out = Bits::new(self.simplices.len());
        for m in model_hull.iter() {
            out.insert(self.apartments[apt].chart[m] as usize);
        }
        Ok(out)
    }

    /// All Levi spheres: model spheres transported through every apartment,
    /// deduplicated.
    pub fn levi_spheres(&self) -> Result<Vec<Bits>> {
        self.transport_census(self.model.levi_spheres()?)
    }

    /// All nonempty convex subcomplexes lying in some apartment.
    pub fn convex_census(&self) -> Result<Vec<Bits>> {
        self.transport_census(self.model.convex_subcomplexes()?)
    }

    fn transport_census(&self, model_masks: Vec<Bits>) -> Result<Vec<Bits>> {
        let mut seen: HashSet<Bits> = HashSet::new();
        for apt in &self.apartments {
            for mm in &model_masks {
                let mut out = Bits::new(self.simplices.len());
                for m in mm.iter() {
                    out.insert(apt.chart[m] as usize);
                }
                seen.insert(out);
                if seen.len() > crate::coxeter::MAX_MASKS {
                    return Err(Error::budget(format!(
                        "building census exceeded {} masks",
                        crate::coxeter::MAX_MASKS
                    )));
                }
            }
        }
        let mut out: Vec<Bits> = seen.into_iter().collect();
        out.sort_by(|a, b| b.count().cmp(&a.count()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// Is a a face of b (equality included)?
    pub fn is_face(&self, a: u32, b: u32) -> bool {
        crate::poset::is_subset_sorted(&self.simplices[a as usize], &self.simplices[b as usize])
    }

    pub fn maximal_in(&self, mask: &Bits) -> Vec<u32> {
        let ids: Vec<u32> = mask.iter().map(|i| i as u32).collect();
        ids.iter()
            .copied()
            .filter(|&id| !ids.iter().any(|&o| o != id && self.is_face(id, o)))
            .collect()
    }

    /// Canonical key of a subcomplex mask: sorted maximal simplex keys.
    pub fn mask_key(&self, mask: &Bits) -> String {
        let mut keys: Vec<String> =
            self.maximal_in(mask).iter().map(|&id| self.simplex_key(id)).collect();
        keys.sort();
        keys.join("&")
    }

    pub fn as_simplicial(&self) -> SimplicialComplex {
        SimplicialComplex::from_facets(self.vertex_keys.clone(), &self.simplices)
            .expect("building is within the face budget")
    }

    pub fn subcomplex_simplicial(&self, mask: &Bits) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> =
            mask.iter().map(|i| self.simplices[i].clone()).collect();
        SimplicialComplex::from_facets(self.vertex_keys.clone(), &facets)
            .expect("subcomplex is within the face budget")
    }

    /// Classical link of a simplex, over the same vertex universe.
    pub fn link_complex(&self, id: u32) -> SimplicialComplex {
        self.as_simplicial()
            .link(&self.simplices[id as usize])
            .expect("simplices of the building are faces")
    }

    /// Can one basis be adapted to both the flag and the decomposition?
    pub fn common_basis_flag(&self, id: u32, parts: &[Subspace]) -> Result<bool> {
        Ok(common_basis_test(&self.flag_subspaces(id)?, parts))
    }

    /// Does the flag lie on the Levi sphere the decomposition spans?
    pub fn flag_on_sphere(&self, id: u32, parts: &[Subspace]) -> Result<bool> {
        Ok(on_levi_sphere(&self.flag_subspaces(id)?, parts))
    }

    fn flag_subspaces(&self, id: u32) -> Result<Vec<Subspace>> {
        match &self.kind {
            BuildingKind::Thin => Err(Error::invalid("no linear structure in a thin building")),
            BuildingKind::TypeA { spaces, .. } => Ok(self.simplices[id as usize]
                .iter()
                .map(|&v| spaces[v as usize].clone())
                .collect()),
        }
    }
}

/// A basis adapted to the decomposition can be chosen adapted to the flag:
/// every member splits as the direct sum of its intersections with the
/// parts.  Weaker than [`on_levi_sphere`].
pub fn common_basis_test(members: &[Subspace], parts: &[Subspace]) -> bool {
    members.iter().all(|m| {
        let dim: usize = parts.iter().map(|s| m.intersect(s).dim()).sum();
        dim == m.dim()
    })
}

/// Every member of the flag is a direct sum of whole parts; exactly
/// membership in the Levi sphere the decomposition spans.
pub fn on_levi_sphere(members: &[Subspace], parts: &[Subspace]) -> bool {
    members.iter().all(|m| {
        let dim: usize =
            parts.iter().filter(|s| m.contains(s)).map(|s| s.dim()).sum();
        dim == m.dim()
    })
}

/// Line orders of type A chambers: the identity order at the identity, one
/// adjacent transposition per right multiplication.
fn type_a_orders(model: &CoxeterComplex) -> Vec<Vec<usize>> {
    let sys = &model.system;
    let n = sys.rank + 1;
    let mut out = vec![Vec::new(); sys.order()];
    out[0] = (0..n).collect();
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(e) = queue.pop_front() {
        for s in 0..sys.rank {
            let t = sys.right(e, s);
            if out[t as usize].is_empty() && t != 0 {
                let mut ord = out[e as usize].clone();
                ord.swap(s, s + 1);
                out[t as usize] = ord;
                queue.push_back(t);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_building() {
        let b = Building::type_a(2, 2).unwrap();
        assert_eq!(b.vertex_count(), 3);
        assert_eq!(b.simplex_count(), 3);
        assert_eq!(b.apartment_count(), 3);
        assert_eq!(b.dim(), 0);
        // Any two distinct points are opposite.
        assert!(b.are_opposite(0, 1));
        assert!(!b.are_opposite(0, 0));
    }

    #[test]
    fn fano_building_counts() {
        let b = Building::type_a(2, 3).unwrap();
        assert_eq!(b.vertex_count(), 14);
        assert_eq!(b.chambers().len(), 21);
        assert_eq!(b.simplex_count(), 35);
        assert_eq!(b.apartment_count(), 28);
        // Each chamber lies in 8 apartments, each vertex in 12.
        let c = b.chambers()[0];
        assert_eq!(b.apartments_containing(&[c]).len(), 8);
        assert_eq!(b.apartments_containing(&[0]).len(), 12);
        // An apartment is a hexagon: 6 vertices, 6 edges.
        assert_eq!(b.apartment_mask(0).count(), 12);
    }

    #[test]
    fn gf3_counts() {
        let b = Building::type_a(3, 2).unwrap();
        assert_eq!(b.vertex_count(), 4);
        assert_eq!(b.apartment_count(), 6);
        let b = Building::type_a(3, 3).unwrap();
        assert_eq!(b.vertex_count(), 26);
        assert_eq!(b.chambers().len(), 52);
        assert_eq!(b.apartment_count(), 234);
    }

    #[test]
    fn thin_building_is_its_model() {
        let b = Building::thin("A2").unwrap();
        assert_eq!(b.vertex_count(), 6);
        assert_eq!(b.simplex_count(), 12);
        assert_eq!(b.apartment_count(), 1);
        for id in 0..b.simplex_count() as u32 {
            let op = b.opposite_in_apartment(0, id).unwrap();
            assert!(b.are_opposite(id, op));
            assert_eq!(b.opposite_in_apartment(0, op).unwrap(), id);
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!(Building::parse_name("A(p=2,n=3)").unwrap().name(), "A(p=2,n=3)");
        assert_eq!(Building::parse_name("thin:B2").unwrap().name(), "thin:B2");
        assert!(Building::parse_name("A(p=4,n=3)").is_err());
        assert!(Building::parse_name("A(p=2,n=7)").is_err());
        assert!(Building::parse_name("nonsense").is_err());
    }

    #[test]
    fn opposition_matches_charts() {
        for b in [Building::type_a(2, 3).unwrap(), Building::type_a(3, 2).unwrap()] {
            for a in 0..b.simplex_count() as u32 {
                for c in 0..b.simplex_count() as u32 {
                    assert_eq!(
                        b.are_opposite(a, c),
                        b.are_opposite_via_charts(a, c),
                        "{} vs {}",
                        b.simplex_key(a),
                        b.simplex_key(c)
                    );
                }
            }
        }
    }

    #[test]
    fn opposite_chamber_count_is_q_cubed() {
        let b = Building::type_a(2, 3).unwrap();
        let c = b.chambers()[0];
        let n = (0..b.simplex_count() as u32).filter(|&x| b.are_opposite(c, x)).count();
        assert_eq!(n, 8);
    }

    #[test]
    fn hulls_transport_consistently() {
        let b = Building::type_a(2, 3).unwrap();
        // Hull of opposite chambers: a full apartment.
        let c = b.chambers()[0];
        let op = (0..b.simplex_count() as u32).find(|&x| b.are_opposite(c, x)).unwrap();
        let (_, hull) = b.convex_hull(&[c, op]).unwrap();
        assert_eq!(hull.count(), 12);
        // Hull of opposite vertices: the pair itself, in every common
        // apartment.
        let v = 0u32;
        let w = (0..b.vertex_count() as u32).find(|&x| b.are_opposite(v, x)).unwrap();
        let apts = b.apartments_containing(&[v, w]);
        assert_eq!(apts.len(), 3);
        for &apt in &apts {
            let hull = b.hull_in_apartment(apt, &[v, w]).unwrap();
            assert_eq!(hull.count(), 2);
            assert!(hull.contains(v as usize) && hull.contains(w as usize));
        }
    }

    #[test]
    fn no_common_apartment_is_an_error() {
        let b = Building::type_a(2, 3).unwrap();
        let all = b.chambers();
        match b.convex_hull(&all) {
            Err(Error::NoCommonApartment(_)) => {}
            other => panic!("expected NoCommonApartment, got {:?}", other.map(|(a, _)| a)),
        }
    }

    #[test]
    fn levi_sphere_and_convex_censuses() {
        let b = Building::type_a(2, 2).unwrap();
        assert_eq!(b.levi_spheres().unwrap().len(), 3);
        assert_eq!(b.convex_census().unwrap().len(), 6);

        let b = Building::type_a(2, 3).unwrap();
        let spheres = b.levi_spheres().unwrap();
        // 28 frame hexagons plus 28 point pairs.
        assert_eq!(spheres.len(), 56);
        assert_eq!(b.convex_census().unwrap().len(), 217);
        // Spheres are hulls of opposite pairs of their top simplices.
        for m in spheres.iter().take(40) {
            let top = *b
                .maximal_in(m)
                .iter()
                .max_by_key(|&&id| b.dim_of(id))
                .unwrap();
            let opp = (0..b.simplex_count() as u32)
                .find(|&x| m.contains(x as usize) && b.are_opposite(top, x))
                .unwrap();
            let apts = b.apartments_containing(&[top, opp]);
            let hull = b.hull_in_apartment(apts[0], &[top, opp]).unwrap();
            assert_eq!(&hull, m);
        }
    }

    #[test]
    fn building_is_spherical() {
        let b = Building::type_a(2, 3).unwrap();
        let k = b.as_simplicial();
        assert_eq!(k.f_vector(), vec![14, 21]);
        let h = crate::homology::homology(&k);
        // The Fano incidence graph: b1 = 21 - 14 + 1 = 8.
        assert_eq!(h.betti(1), 8);
        assert_eq!(h.betti(0), 0);
        assert!(crate::homology::is_spherical(&k, 1));
    }

    #[test]
    fn common_basis_judgements() {
        let e1 = Subspace::from_rows(2, 2, &[vec![1, 0]]);
        let e2 = Subspace::from_rows(2, 2, &[vec![0, 1]]);
        let diag = Subspace::from_rows(2, 2, &[vec![1, 1]]);
        let parts = vec![e1.clone(), e2.clone()];
        assert!(common_basis_test(&[e1.clone()], &parts));
        assert!(!common_basis_test(&[diag], &parts));
        // A plane that is the sum of both parts.
        let plane = e1.sum(&e2);
        assert!(common_basis_test(&[plane], &parts));

        // In GF(2)^3 a line inside a part splits but is not a sum of whole
        // parts, separating the two judgements.
        let l1 = Subspace::from_rows(2, 3, &[vec![1, 0, 0]]);
        let p12 = Subspace::from_rows(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let l3 = Subspace::from_rows(2, 3, &[vec![0, 0, 1]]);
        let parts = vec![p12.clone(), l3];
        assert!(common_basis_test(&[l1.clone(), p12.clone()], &parts));
        assert!(!on_levi_sphere(&[l1, p12], &parts));
    }

    #[test]
    fn sphere_membership_judgements() {
        // In GF(2)^3: flags on the Levi sphere of a decomposition are
        // exactly those whose members are sums of whole parts, and each of
        // those admits a common basis.
        let b = Building::type_a(2, 3).unwrap();
        let l = b.subspace(0).unwrap().clone();
        let others: Vec<u32> = (0..b.vertex_count() as u32)
            .filter(|&v| {
                b.vertex_type(v) == 2 && b.subspace(v).unwrap().intersect(&l).dim() == 0
            })
            .collect();
        let plane = b.subspace(others[0]).unwrap().clone();
        let parts = vec![l.clone(), plane.clone()];
        let v_l = b.vertex_of_subspace(&l).unwrap();
        let v_p = b.vertex_of_subspace(&plane).unwrap();
        let (_, sphere) = b.convex_hull(&[v_l, v_p]).unwrap();
        for id in 0..b.simplex_count() as u32 {
            assert_eq!(
                sphere.contains(id as usize),
                b.flag_on_sphere(id, &parts).unwrap(),
                "{}",
                b.simplex_key(id)
            );
            if sphere.contains(id as usize) {
                assert!(b.common_basis_flag(id, &parts).unwrap());
            }
        }
    }
}
