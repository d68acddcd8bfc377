//! The m-cluster category C = D^b(kA_n) / τ⁻¹[m].
//!
//! Objects are multisets of orbit representatives; the fundamental domain is
//! ind(mod kA_n) at shifts 0..m−1 together with the projectives at shift m.
//! Hom spaces are graded by orbit degree, Hom_C(X,Y) = ⊕_k Hom_D(X, F^k Y),
//! and every graded piece between indecomposables is at most one-dimensional,
//! so a morphism is a matrix of scalars against canonical basis elements.
//!
//! The basis element of a pair is a chain-map class between the canonical
//! complexes. Bases are chosen F-equivariantly: each pair orbit is solved
//! once at a fixed anchor position and transported downwards through the
//! honest inverse of F (Nakayama, re-resolution, lifting along the
//! comparison quasi-isomorphisms). Composition then reduces to structure
//! constants that are invariant along orbits, which is what makes the
//! table-driven composition of the quotient category associative.

use crate::derived::{
    apply_f, apply_f_inv, apply_f_power, cohomology_split, compose_chain, cone, direct_sum,
    hom_d_dim, hom_space, lift_with_homotopy, minimize, nu, resolve, to_complex, ChainMap,
    DerivedIndec, HomSpace, IntervalComplex,
};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClusterError {
    #[error("indecomposable count {0} exceeds the configured cap {1}")]
    ResourceCap(usize, usize),
    #[error("object does not belong to this category context")]
    ForeignObject,
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("source summand {0} carries blocks of mixed orbit degrees; cannot lift")]
    NonHomogeneous(usize),
    #[error("rank must be at least 1 and orbit parameter at least 1")]
    BadParameters,
}

/// Index of an indecomposable in the fundamental domain of a context.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CIndecId(pub usize);

/// Object of C: a sorted multiset of indecomposables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CObject {
    summands: Vec<CIndecId>,
}

impl CObject {
    pub fn zero() -> Self {
        CObject { summands: Vec::new() }
    }

    pub fn from_ids(mut ids: Vec<CIndecId>) -> Self {
        ids.sort();
        CObject { summands: ids }
    }

    pub fn indec(id: CIndecId) -> Self {
        CObject { summands: vec![id] }
    }

    pub fn summands(&self) -> &[CIndecId] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn plus(&self, other: &CObject) -> CObject {
        let mut ids = self.summands.clone();
        ids.extend_from_slice(&other.summands);
        CObject::from_ids(ids)
    }

    pub fn contains(&self, id: CIndecId) -> bool {
        self.summands.contains(&id)
    }
}

/// Homogeneous basis element of a graded Hom space between objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisElem {
    pub src_pos: usize,
    pub tgt_pos: usize,
    pub degree: i32,
}

/// Morphism of C: scalar blocks against the canonical graded bases,
/// keyed by (source summand, target summand, orbit degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMorphism {
    pub src: CObject,
    pub tgt: CObject,
    pub blocks: BTreeMap<(usize, usize, i32), Scalar>,
}

impl CMorphism {
    pub fn zero(src: CObject, tgt: CObject) -> Self {
        CMorphism { src, tgt, blocks: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(Scalar::is_zero)
    }

    pub fn set_block(&mut self, src_pos: usize, tgt_pos: usize, degree: i32, c: Scalar) {
        if c.is_zero() {
            self.blocks.remove(&(src_pos, tgt_pos, degree));
        } else {
            self.blocks.insert((src_pos, tgt_pos, degree), c);
        }
    }

    /// Restriction to a subset of source summands (re-indexed in order).
    pub fn restrict_source(&self, keep: &[usize]) -> CMorphism {
        let src = CObject::from_ids(keep.iter().map(|&i| self.src.summands()[i]).collect());
        let mut blocks = BTreeMap::new();
        for (new_i, &old_i) in keep.iter().enumerate() {
            for (&(s, t, d), c) in &self.blocks {
                if s == old_i {
                    blocks.insert((new_i, t, d), c.clone());
                }
            }
        }
        CMorphism { src, tgt: self.tgt.clone(), blocks }
    }
}

const ANCHOR_POS: i32 = 3;
const DEGREE_SCAN: std::ops::RangeInclusive<i32> = -2..=3;
pub const DEFAULT_INDEC_CAP: usize = 4096;

struct Transport {
    nu_fu: IntervalComplex,
    q: IntervalComplex,
    eps: ChainMap,
    r: IntervalComplex,
    phi: ChainMap,
}

#[derive(Default)]
struct Tables {
    complexes: HashMap<DerivedIndec, IntervalComplex>,
    spaces: HashMap<(DerivedIndec, DerivedIndec), HomSpace>,
    reps: HashMap<(DerivedIndec, DerivedIndec), ChainMap>,
    consts: HashMap<(DerivedIndec, DerivedIndec, DerivedIndec), Scalar>,
    transports: HashMap<DerivedIndec, std::sync::Arc<Transport>>,
}

/// Immutable context for one (n, m, field): the fundamental domain, graded
/// Hom dimensions, and lazily built morphism tables.
pub struct CategoryContext {
    n: usize,
    m: i32,
    field: Field,
    indecs: Vec<DerivedIndec>,
    index: HashMap<DerivedIndec, usize>,
    tables: Mutex<Tables>,
}

impl CategoryContext {
    pub fn build(n: usize, m: i32, field: Field) -> Result<Self, ClusterError> {
        Self::build_with_cap(n, m, field, DEFAULT_INDEC_CAP)
    }

    pub fn build_with_cap(n: usize, m: i32, field: Field, cap: usize) -> Result<Self, ClusterError> {
        if n < 1 || m < 1 {
            return Err(ClusterError::BadParameters);
        }
        let mut indecs = Vec::new();
        for s in 0..m {
            for iv in crate::quiver::Interval::all(n) {
                indecs.push(DerivedIndec { iv, shift: s });
            }
        }
        for i in 1..=n {
            indecs.push(DerivedIndec { iv: crate::quiver::Interval::new(i, n), shift: m });
        }
        indecs.sort();
        if indecs.len() > cap {
            return Err(ClusterError::ResourceCap(indecs.len(), cap));
        }
        let index = indecs.iter().enumerate().map(|(i, d)| (*d, i)).collect();
        let ctx = CategoryContext { n, m, field, indecs, index, tables: Mutex::new(Tables::default()) };
        ctx.verify_domain();
        Ok(ctx)
    }

    fn verify_domain(&self) {
        // each domain element returns to itself with orbit position 1 after F
        for (i, d) in self.indecs.iter().enumerate() {
            let (id, pos) = self.normalize(apply_f(*d, self.n, self.m));
            assert_eq!((id.0, pos), (i, 1), "F-orbit structure broken at {d}");
        }
        // local endomorphism rings are one-dimensional
        for i in 0..self.indecs.len() {
            let id = CIndecId(i);
            let total: usize = self.graded_hom_dims(id, id).iter().map(|(_, d)| d).sum();
            assert_eq!(total, 1, "End of {} must be one-dimensional", self.indecs[i]);
        }
        // Serre duality at the dimension level: Hom(X, Y[1]) ≅ D Hom(Y, X[m])
        for x in 0..self.indecs.len() {
            for y in 0..self.indecs.len() {
                let xs = CIndecId(x);
                let ys = CIndecId(y);
                let lhs: usize = self
                    .graded_hom_dims(xs, self.shift_indec(ys, 1))
                    .iter()
                    .map(|(_, d)| d)
                    .sum();
                let rhs: usize = self
                    .graded_hom_dims(ys, self.shift_indec(xs, self.m))
                    .iter()
                    .map(|(_, d)| d)
                    .sum();
                assert_eq!(lhs, rhs, "Serre duality fails at ({}, {})", self.indecs[x], self.indecs[y]);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn indec_count(&self) -> usize {
        self.indecs.len()
    }

    pub fn indecs(&self) -> Vec<CIndecId> {
        (0..self.indecs.len()).map(CIndecId).collect()
    }

    pub fn indec(&self, id: CIndecId) -> DerivedIndec {
        self.indecs[id.0]
    }

    pub fn display_indec(&self, id: CIndecId) -> String {
        let d = self.indecs[id.0];
        if d.iv.is_projective(self.n) && d.shift > 0 {
            format!("P{}[{}]", d.iv.a, d.shift)
        } else {
            format!("{d}")
        }
    }

    pub fn display_object(&self, x: &CObject) -> String {
        if x.is_empty() {
            return "0".to_string();
        }
        x.summands()
            .iter()
            .map(|&s| self.display_indec(s))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Sends a derived indecomposable to its orbit representative and
    /// position: d = F^pos(representative).
    pub fn normalize(&self, d: DerivedIndec) -> (CIndecId, i32) {
        let mut cur = d;
        let mut pos = 0i32;
        for _ in 0..10_000 {
            if let Some(&i) = self.index.get(&cur) {
                return (CIndecId(i), pos);
            }
            if cur.shift < 0 {
                cur = apply_f(cur, self.n, self.m);
                pos -= 1;
            } else {
                cur = apply_f_inv(cur, self.n, self.m);
                pos += 1;
            }
        }
        panic!("normalization did not terminate for {d}");
    }

    pub fn shift_indec(&self, id: CIndecId, s: i32) -> CIndecId {
        self.normalize(self.indecs[id.0].shifted(s)).0
    }

    pub fn shift_object(&self, x: &CObject, s: i32) -> CObject {
        CObject::from_ids(x.summands().iter().map(|&i| self.shift_indec(i, s)).collect())
    }

    pub fn is_isomorphic(&self, x: &CObject, y: &CObject) -> bool {
        x == y
    }

    /// Graded Hom dimensions between indecomposables: (orbit degree, dim).
    pub fn graded_hom_dims(&self, x: CIndecId, y: CIndecId) -> Vec<(i32, usize)> {
        let u = self.indecs[x.0];
        let v = self.indecs[y.0];
        let mut out = Vec::new();
        for k in DEGREE_SCAN {
            let d = hom_d_dim(u, apply_f_power(v, self.n, self.m, k));
            if d > 0 {
                assert!(
                    (0..=1).contains(&k),
                    "graded Hom outside the expected window at ({u}, {v}), degree {k}"
                );
                out.push((k, d));
            }
        }
        out
    }

    pub fn hom_dim(&self, x: &CObject, y: &CObject) -> usize {
        self.hom_basis(x, y).len()
    }

    /// Basis of Hom_C(X, Y): one element per (source summand, target summand,
    /// orbit degree) with a nonzero graded piece, in lexicographic order.
    pub fn hom_basis(&self, x: &CObject, y: &CObject) -> Vec<BasisElem> {
        let mut out = Vec::new();
        for (i, &xi) in x.summands().iter().enumerate() {
            for (j, &yj) in y.summands().iter().enumerate() {
                for (k, d) in self.graded_hom_dims(xi, yj) {
                    assert_eq!(d, 1, "graded pieces are one-dimensional in type A");
                    out.push(BasisElem { src_pos: i, tgt_pos: j, degree: k });
                }
            }
        }
        out.sort();
        out
    }

    pub fn basis_morphism(&self, x: &CObject, y: &CObject, e: BasisElem) -> CMorphism {
        let mut f = CMorphism::zero(x.clone(), y.clone());
        f.set_block(e.src_pos, e.tgt_pos, e.degree, self.field.one());
        f
    }

    pub fn identity(&self, x: &CObject) -> CMorphism {
        let mut f = CMorphism::zero(x.clone(), x.clone());
        for i in 0..x.len() {
            f.set_block(i, i, 0, self.field.one());
        }
        f
    }

    /// Coordinates of a morphism against `hom_basis(src, tgt)`.
    pub fn coordinates(&self, f: &CMorphism) -> Vec<Scalar> {
        let basis = self.hom_basis(&f.src, &f.tgt);
        basis
            .iter()
            .map(|e| {
                f.blocks
                    .get(&(e.src_pos, e.tgt_pos, e.degree))
                    .cloned()
                    .unwrap_or_else(|| self.field.zero())
            })
            .collect()
    }

    /// Graded composition g ∘ f via orbit-equivariant structure constants.
    pub fn compose(&self, g: &CMorphism, f: &CMorphism) -> Result<CMorphism, ClusterError> {
        if f.tgt != g.src {
            return Err(ClusterError::NotComposable);
        }
        let mut out = CMorphism::zero(f.src.clone(), g.tgt.clone());
        for (&(i, j, dj), fc) in &f.blocks {
            for (&(j2, l, dk), gc) in &g.blocks {
                if j != j2 {
                    continue;
                }
                let a = self.indecs[f.src.summands()[i].0];
                let b = apply_f_power(self.indecs[f.tgt.summands()[j].0], self.n, self.m, dj);
                let c = apply_f_power(self.indecs[g.tgt.summands()[l].0], self.n, self.m, dj + dk);
                let sc = self.structure_constant(a, b, c);
                if sc.is_zero() {
                    continue;
                }
                let add = self.field.mul(&self.field.mul(fc, gc), &sc);
                let key = (i, l, dj + dk);
                let prev = out.blocks.get(&key).cloned().unwrap_or_else(|| self.field.zero());
                let v = self.field.add(&prev, &add);
                if v.is_zero() {
                    out.blocks.remove(&key);
                } else {
                    out.blocks.insert(key, v);
                }
            }
        }
        Ok(out)
    }

    // ----- table layer -----

    pub(crate) fn canon_complex(&self, d: DerivedIndec) -> IntervalComplex {
        if let Some(c) = self.tables.lock().unwrap().complexes.get(&d) {
            return c.clone();
        }
        let c = to_complex(d, self.n, self.field);
        self.tables.lock().unwrap().complexes.insert(d, c.clone());
        c
    }

    pub(crate) fn pair_space(&self, a: DerivedIndec, b: DerivedIndec) -> HomSpace {
        if let Some(s) = self.tables.lock().unwrap().spaces.get(&(a, b)) {
            return s.clone();
        }
        let s = hom_space(&self.canon_complex(a), &self.canon_complex(b));
        self.tables.lock().unwrap().spaces.insert((a, b), s.clone());
        s
    }

    fn orbit_position(&self, d: DerivedIndec) -> i32 {
        self.normalize(d).1
    }

    fn transport(&self, u: DerivedIndec) -> std::sync::Arc<Transport> {
        if let Some(t) = self.tables.lock().unwrap().transports.get(&u) {
            return t.clone();
        }
        let fu = apply_f(u, self.n, self.m);
        let cfu = self.canon_complex(fu);
        let nu_fu = nu(&cfu);
        let resolved = resolve(&nu_fu);
        let r = resolved.q.shifted(-(self.m + 1));
        let cu = self.canon_complex(u);
        let space = hom_space(&cu, &r);
        assert_eq!(space.dim(), 1, "orbit comparison space must be a line at {u}");
        let phi = space.chain_map_of(&space.classes[0], &cu, &r);
        let t = std::sync::Arc::new(Transport { nu_fu, q: resolved.q, eps: resolved.eps, r, phi });
        self.tables.lock().unwrap().transports.insert(u, t.clone());
        t
    }

    /// Canonical basis representative of the (one-dimensional) Hom_D between
    /// two derived indecomposables, F-equivariant along pair orbits.
    pub(crate) fn rep(&self, a: DerivedIndec, b: DerivedIndec) -> ChainMap {
        assert_eq!(hom_d_dim(a, b), 1, "no basis representative for ({a}, {b})");
        if a == b {
            return ChainMap::identity(&self.canon_complex(a));
        }
        if let Some(r) = self.tables.lock().unwrap().reps.get(&(a, b)) {
            return r.clone();
        }
        let pos = self.orbit_position(a).min(self.orbit_position(b));
        assert!(pos <= ANCHOR_POS, "pair ({a}, {b}) above the transport anchor");
        let rep = if pos == ANCHOR_POS {
            let space = self.pair_space(a, b);
            assert_eq!(space.dim(), 1, "expected a one-dimensional Hom at ({a}, {b})");
            space.chain_map_of(&space.classes[0], &self.canon_complex(a), &self.canon_complex(b))
        } else {
            // transport from the pair one orbit step up
            let fa = apply_f(a, self.n, self.m);
            let fb = apply_f(b, self.n, self.m);
            let up = self.rep(fa, fb);
            let ta = self.transport(a);
            let tb = self.transport(b);
            // ν acts on morphisms of projective complexes by relabelling
            let phi0 = compose_chain(&ta.q, &ta.nu_fu, &tb.nu_fu, &up, &ta.eps);
            let (g0, _) = lift_with_homotopy(&ta.q, &tb.q, &tb.nu_fu, &tb.eps, &phi0);
            let g1 = g0.shifted(-(self.m + 1));
            let ca = self.canon_complex(a);
            let cb = self.canon_complex(b);
            let phi1 = compose_chain(&ca, &ta.r, &tb.r, &g1, &ta.phi);
            let (repab, _) = lift_with_homotopy(&ca, &cb, &tb.r, &tb.phi, &phi1);
            let space = self.pair_space(a, b);
            let coords = space.express(&repab, &ca, &cb);
            assert!(
                coords.iter().any(|s| !s.is_zero()),
                "transported basis collapsed at ({a}, {b})"
            );
            repab
        };
        self.tables.lock().unwrap().reps.insert((a, b), rep.clone());
        rep
    }

    /// Scalar c with rep(b,c) ∘ rep(a,b) ≃ c · rep(a,c).
    pub(crate) fn structure_constant(&self, a: DerivedIndec, b: DerivedIndec, c: DerivedIndec) -> Scalar {
        if hom_d_dim(a, b) == 0 || hom_d_dim(b, c) == 0 {
            return self.field.zero();
        }
        if let Some(s) = self.tables.lock().unwrap().consts.get(&(a, b, c)) {
            return s.clone();
        }
        let ca = self.canon_complex(a);
        let cb = self.canon_complex(b);
        let cc = self.canon_complex(c);
        let composite = compose_chain(&ca, &cb, &cc, &self.rep(b, c), &self.rep(a, b));
        let value = if hom_d_dim(a, c) == 0 {
            debug_assert!(crate::derived::is_null_homotopic(&ca, &cc, &composite));
            self.field.zero()
        } else {
            // coefficient against the transported representative of (a, c),
            // which may differ from the raw canonical class by a scalar
            let space = self.pair_space(a, c);
            let coords = space.express(&composite, &ca, &cc);
            assert_eq!(coords.len(), 1);
            let base = space.express(&self.rep(a, c), &ca, &cc);
            assert!(!base[0].is_zero());
            self.field.div(&coords[0], &base[0]).unwrap()
        };
        self.tables.lock().unwrap().consts.insert((a, b, c), value.clone());
        value
    }

    /// Dimension of the radical modulo radical square between
    /// indecomposables: the arrow count of the AR quiver.
    pub fn irreducible_dim(&self, x: CIndecId, y: CIndecId) -> usize {
        let rad = |u: CIndecId, v: CIndecId| -> Vec<BasisElem> {
            let xo = CObject::indec(u);
            let yo = CObject::indec(v);
            self.hom_basis(&xo, &yo)
                .into_iter()
                .filter(|e| !(u == v && e.degree == 0))
                .collect()
        };
        let rad_xy = rad(x, y);
        if rad_xy.is_empty() {
            return 0;
        }
        let xo = CObject::indec(x);
        let yo = CObject::indec(y);
        let mut comps: Vec<Vec<Scalar>> = Vec::new();
        for mid in self.indecs() {
            let mo = CObject::indec(mid);
            for e1 in rad(x, mid) {
                let f1 = self.basis_morphism(&xo, &mo, e1);
                for e2 in rad(mid, y) {
                    let f2 = self.basis_morphism(&mo, &yo, e2);
                    let comp = self.compose(&f2, &f1).unwrap();
                    if !comp.is_zero() {
                        comps.push(self.coordinates(&comp));
                    }
                }
            }
        }
        let dim_hom = self.hom_basis(&xo, &yo).len();
        let rad2_rank = if comps.is_empty() {
            0
        } else {
            Matrix::from_columns(self.field, dim_hom, &comps).rank()
        };
        rad_xy.len() - rad2_rank
    }

    /// Completes a blockwise-homogeneous morphism to a triangle
    /// X → Y → Z → X[1], computing the cone in the derived model.
    pub fn complete_triangle(&self, f: &CMorphism) -> Result<CTriangle, ClusterError> {
        // one orbit degree per source summand
        let mut degree_of: Vec<Option<i32>> = vec![None; f.src.len()];
        for (&(i, _, d), c) in &f.blocks {
            if c.is_zero() {
                continue;
            }
            match degree_of[i] {
                None => degree_of[i] = Some(d),
                Some(existing) if existing == d => {}
                Some(_) => return Err(ClusterError::NonHomogeneous(i)),
            }
        }
        let src_lifts: Vec<DerivedIndec> = f
            .src
            .summands()
            .iter()
            .enumerate()
            .map(|(i, &id)| {
                let k = degree_of[i].unwrap_or(0);
                apply_f_power(self.indecs[id.0], self.n, self.m, -k)
            })
            .collect();
        let tgt_lifts: Vec<DerivedIndec> = f.tgt.summands().iter().map(|&id| self.indecs[id.0]).collect();
        let src_parts: Vec<IntervalComplex> = src_lifts.iter().map(|&d| self.canon_complex(d)).collect();
        let tgt_parts: Vec<IntervalComplex> = tgt_lifts.iter().map(|&d| self.canon_complex(d)).collect();
        let (src_sum, src_off) = direct_sum(&src_parts);
        let (tgt_sum, tgt_off) = direct_sum(&tgt_parts);
        let mut big = ChainMap::zero();
        for (&(i, j, d), c) in &f.blocks {
            if c.is_zero() {
                continue;
            }
            debug_assert_eq!(degree_of[i], Some(d));
            let a = src_lifts[i];
            let b = tgt_lifts[j];
            let block = self.rep(a, b).scale(self.field, c);
            let ca = self.canon_complex(a);
            let cb = self.canon_complex(b);
            for deg in ca.lo..=ca.hi() {
                let bm = block.mat(deg, &ca, &cb);
                if bm.is_zero() {
                    continue;
                }
                let ro = tgt_off[j].get(&deg).copied().unwrap_or(0);
                let co = src_off[i].get(&deg).copied().unwrap_or(0);
                let mut cur = big.mat(deg, &src_sum, &tgt_sum);
                for r in 0..bm.rows() {
                    for cc in 0..bm.cols() {
                        cur.set(ro + r, co + cc, bm.get(r, cc).clone());
                    }
                }
                big.insert(deg, cur);
            }
        }
        assert!(big.is_chain_map(&src_sum, &tgt_sum), "lifted morphism must be a chain map");
        let (cone_cx, incl, proj) = cone(&src_sum, &tgt_sum, &big);
        let minimal = minimize(&cone_cx);
        let parts = cohomology_split(&minimal);
        let cone_obj = CObject::from_ids(parts.iter().map(|&d| self.normalize(d).0).collect());
        Ok(CTriangle {
            src: f.src.clone(),
            mid: f.tgt.clone(),
            cone: cone_obj,
            src_complex: src_sum,
            tgt_complex: tgt_sum,
            map: big,
            cone_complex: cone_cx,
            incl,
            proj,
        })
    }

    /// Checks the six-term Hom exactness of a triangle at a probe object,
    /// working with honest chain maps over all relevant orbit translates.
    pub fn triangle_les_at_probe(&self, t: &CTriangle, probe: CIndecId) -> bool {
        let p = self.indecs[probe.0];
        let src1 = t.src_complex.shifted(1);
        let cone1 = t.cone_complex.shifted(1);
        let map1 = t.map.shifted(1);
        let incl1 = t.incl.shifted(1);
        for k in -3..=3 {
            let q = self.canon_complex(apply_f_power(p, self.n, self.m, k));
            let h_src = hom_space(&q, &t.src_complex);
            let h_mid = hom_space(&q, &t.tgt_complex);
            let h_cone = hom_space(&q, &t.cone_complex);
            let h_src1 = hom_space(&q, &src1);
            let tgt1 = t.tgt_complex.shifted(1);
            let h_mid1 = hom_space(&q, &tgt1);
            let h_cone1 = hom_space(&q, &cone1);
            let m_f = induced_matrix(self.field, &q, &t.src_complex, &t.tgt_complex, &t.map, &h_src, &h_mid);
            let m_i = induced_matrix(self.field, &q, &t.tgt_complex, &t.cone_complex, &t.incl, &h_mid, &h_cone);
            let m_p = induced_matrix(self.field, &q, &t.cone_complex, &src1, &t.proj, &h_cone, &h_src1);
            let m_f1 = induced_matrix(self.field, &q, &src1, &tgt1, &map1, &h_src1, &h_mid1);
            let m_i1 = induced_matrix(self.field, &q, &tgt1, &cone1, &incl1, &h_mid1, &h_cone1);
            let ok = exact_at(&m_f, &m_i)
                && exact_at(&m_i, &m_p)
                && exact_at(&m_p, &m_f1)
                && exact_at(&m_f1, &m_i1);
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Matrix of Hom(Q, −) applied to a chain map, in class coordinates.
fn induced_matrix(
    field: Field,
    q: &IntervalComplex,
    a: &IntervalComplex,
    b: &IntervalComplex,
    f: &ChainMap,
    ha: &HomSpace,
    hb: &HomSpace,
) -> Matrix {
    let mut cols = Vec::new();
    for cls in &ha.classes {
        let rep = ha.chain_map_of(cls, q, a);
        let comp = compose_chain(q, a, b, f, &rep);
        cols.push(hb.express(&comp, q, b));
    }
    Matrix::from_columns(field, hb.dim(), &cols)
}

fn exact_at(incoming: &Matrix, outgoing: &Matrix) -> bool {
    let comp = outgoing.mul(incoming);
    comp.is_zero() && incoming.rank() + outgoing.rank() == incoming.rows()
}

/// A completed triangle X → Y → Z → X[1] with its derived-level witness.
pub struct CTriangle {
    pub src: CObject,
    pub mid: CObject,
    pub cone: CObject,
    pub src_complex: IntervalComplex,
    pub tgt_complex: IntervalComplex,
    pub map: ChainMap,
    pub cone_complex: IntervalComplex,
    pub incl: ChainMap,
    pub proj: ChainMap,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Interval;

    const F: Field = Field::Prime(32003);

    fn ctx(n: usize, m: i32) -> CategoryContext {
        CategoryContext::build(n, m, F).unwrap()
    }

    #[test]
    fn indecomposable_counts() {
        assert_eq!(ctx(2, 1).indec_count(), 5);
        assert_eq!(ctx(3, 1).indec_count(), 9);
        assert_eq!(ctx(1, 1).indec_count(), 2);
        assert_eq!(ctx(4, 1).indec_count(), 14);
        // higher orbit parameter: m·n(n+1)/2 + n
        assert_eq!(ctx(2, 2).indec_count(), 8);
        assert_eq!(ctx(1, 2).indec_count(), 3);
        assert_eq!(ctx(3, 2).indec_count(), 15);
    }

    #[test]
    fn resource_cap() {
        assert!(matches!(
            CategoryContext::build_with_cap(4, 1, F, 5),
            Err(ClusterError::ResourceCap(14, 5))
        ));
    }

    #[test]
    fn normalization_idempotent_and_orbit_stable() {
        let c = ctx(3, 2);
        for id in c.indecs() {
            let d = c.indec(id);
            assert_eq!(c.normalize(d), (id, 0));
            for k in -3..=3 {
                let (nid, pos) = c.normalize(apply_f_power(d, 3, 2, k));
                assert_eq!((nid, pos), (id, k));
            }
        }
    }

    #[test]
    fn a1_ext_both_ways() {
        let c = ctx(1, 1);
        let ids = c.indecs();
        let s = CObject::indec(ids[0]);
        let s1 = CObject::indec(ids[1]);
        // shifted copies are isomorphic to each other through the orbit
        assert_eq!(c.shift_indec(ids[0], 2), ids[0]);
        // Ext¹ in both directions, no plain Homs between the two objects
        assert_eq!(c.hom_dim(&s, &c.shift_object(&s1, 1)), 1);
        assert_eq!(c.hom_dim(&s1, &c.shift_object(&s, 1)), 1);
        assert_eq!(c.hom_dim(&s, &s1), 0);
        assert_eq!(c.hom_dim(&s1, &s), 0);
    }

    #[test]
    fn shift_consistency() {
        let c = ctx(3, 1);
        for id in c.indecs() {
            let x = CObject::indec(id);
            assert_eq!(c.shift_object(&x, 0), x);
            let one_one = c.shift_object(&c.shift_object(&x, 1), 1);
            let two = c.shift_object(&x, 2);
            assert_eq!(one_one, two);
            // X[m] is the AR translate in C: same orbit as τX
            let dm = c.indec(id);
            let shifted = c.shift_indec(id, c.m());
            let tau_obj = match crate::quiver::tau(dm.iv, c.n()) {
                crate::quiver::TauResult::Translate(t) => {
                    c.normalize(DerivedIndec { iv: t, shift: dm.shift }).0
                }
                crate::quiver::TauResult::Projective => {
                    c.normalize(DerivedIndec { iv: Interval::new(1, dm.iv.a), shift: dm.shift - 1 }).0
                }
            };
            assert_eq!(shifted, tau_obj, "X[m] = τX in the orbit category");
        }
    }

    #[test]
    fn composition_identities_and_associativity() {
        for (n, m) in [(2usize, 1i32), (3, 1), (2, 2)] {
            let c = ctx(n, m);
            let ids = c.indecs();
            // identity laws
            for &x in &ids {
                for &y in &ids {
                    let xo = CObject::indec(x);
                    let yo = CObject::indec(y);
                    for e in c.hom_basis(&xo, &yo) {
                        let f = c.basis_morphism(&xo, &yo, e);
                        let left = c.compose(&f, &c.identity(&xo)).unwrap();
                        let right = c.compose(&c.identity(&yo), &f).unwrap();
                        assert_eq!(left, f);
                        assert_eq!(right, f);
                    }
                }
            }
            // associativity over all composable basis triples
            for &x in &ids {
                for &y in &ids {
                    for &z in &ids {
                        for &w in &ids {
                            let xo = CObject::indec(x);
                            let yo = CObject::indec(y);
                            let zo = CObject::indec(z);
                            let wo = CObject::indec(w);
                            for e1 in c.hom_basis(&xo, &yo) {
                                let f1 = c.basis_morphism(&xo, &yo, e1);
                                for e2 in c.hom_basis(&yo, &zo) {
                                    let f2 = c.basis_morphism(&yo, &zo, e2);
                                    let f21 = c.compose(&f2, &f1).unwrap();
                                    for e3 in c.hom_basis(&zo, &wo) {
                                        let f3 = c.basis_morphism(&zo, &wo, e3);
                                        let left = c.compose(&f3, &f21).unwrap();
                                        let f32 = c.compose(&f3, &f2).unwrap();
                                        let right = c.compose(&f32, &f1).unwrap();
                                        assert_eq!(left, right, "associativity at {n},{m}");
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn structure_constants_are_orbit_invariant() {
        for (n, m) in [(2usize, 1i32), (2, 2), (3, 1)] {
            let c = ctx(n, m);
            for x in c.indecs() {
                for y in c.indecs() {
                    for z in c.indecs() {
                        let a = c.indec(x);
                        for (j, _) in c.graded_hom_dims(x, y) {
                            let b = apply_f_power(c.indec(y), n, m, j);
                            for k in -2..=3i32 {
                                let cc = apply_f_power(c.indec(z), n, m, j + k);
                                if hom_d_dim(b, cc) == 0 || hom_d_dim(a, cc) == 0 {
                                    continue;
                                }
                                let s0 = c.structure_constant(a, b, cc);
                                let s1 = c.structure_constant(
                                    apply_f(a, n, m),
                                    apply_f(b, n, m),
                                    apply_f(cc, n, m),
                                );
                                assert_eq!(s0, s1, "orbit invariance at ({a}, {b}, {cc})");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn triangle_of_identity_and_zero() {
        let c = ctx(2, 1);
        let x = CObject::indec(c.indecs()[0]);
        let y = CObject::indec(c.indecs()[1]);
        let t = c.complete_triangle(&c.identity(&x)).unwrap();
        assert!(t.cone.is_empty());
        let z = c.complete_triangle(&CMorphism::zero(x.clone(), y.clone())).unwrap();
        let expected = y.plus(&c.shift_object(&x, 1));
        assert_eq!(z.cone, expected);
    }

    #[test]
    fn triangle_les_small() {
        let c = ctx(2, 1);
        let ids = c.indecs();
        for &x in &ids {
            for &y in &ids {
                let xo = CObject::indec(x);
                let yo = CObject::indec(y);
                for e in c.hom_basis(&xo, &yo) {
                    let f = c.basis_morphism(&xo, &yo, e);
                    let t = c.complete_triangle(&f).unwrap();
                    for &p in &ids {
                        assert!(c.triangle_les_at_probe(&t, p), "LES fails");
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_degree_morphism_is_rejected() {
        // build a source summand carrying blocks in two different degrees
        let c = ctx(2, 1);
        let ids = c.indecs();
        // find x, y1, y2 with Hom(x,y1) in degree 0 and Hom(x,y2) in degree 1
        for &x in &ids {
            for &y1 in &ids {
                for &y2 in &ids {
                    let d1 = c.graded_hom_dims(x, y1);
                    let d2 = c.graded_hom_dims(x, y2);
                    let has0 = d1.iter().any(|&(k, _)| k == 0);
                    let has1 = d2.iter().any(|&(k, _)| k == 1);
                    if has0 && has1 {
                        let xo = CObject::indec(x);
                        let yo = CObject::from_ids(vec![y1, y2]);
                        let mut f = CMorphism::zero(xo, yo);
                        f.set_block(0, 0, 0, F.one());
                        f.set_block(0, 1, 1, F.one());
                        // positions after sorting may swap; set blocks to both targets anyway
                        assert!(matches!(
                            c.complete_triangle(&f),
                            Err(ClusterError::NonHomogeneous(0))
                        ));
                        return;
                    }
                }
            }
        }
        panic!("no mixed-degree configuration found");
    }
}
