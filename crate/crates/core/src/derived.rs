//! Bounded complexes over mod kA_n and the auto-equivalence F = τ⁻¹[m].
//!
//! Objects are cochain complexes whose terms are direct sums of interval
//! modules and whose differentials are matrices of scalars against the
//! canonical overlap maps. Since every Hom space between intervals is at
//! most one-dimensional and composites of canonical maps are canonical or
//! zero, all chain-level algebra reduces to matrix arithmetic with one
//! combinatorial twist: a product entry survives only when the composite
//! overlap is nonempty.
//!
//! Complexes of projectives compute derived Homs as chain maps modulo
//! homotopy. Cones, minimization (cancelling identity components of the
//! differential) and cohomology splitting give the Krull-Schmidt bookkeeping.
//! F acts combinatorially on indecomposables; on morphisms its inverse is
//! computed honestly via the Nakayama functor and re-resolution, which is
//! what the orbit-category tables are built from.
//!
//! Sign conventions, fixed once: X[1]^i = X^{i+1} with differential −d,
//! cone(f)^i = X^{i+1} ⊕ Y^i with differential [[−d_X, 0], [f, d_Y]],
//! and f ≃ g when f − g = d∘h + h∘d.

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::quiver::{
    canonical_nonzero_at, decompose, ext_dim, hom_dim, Interval, Representation,
};
use std::collections::BTreeMap;

/// Indecomposable of the bounded derived category: an interval placed in a
/// single cohomological degree. `shift` is the suspension count, so the
/// module sits in cohomological degree `-shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DerivedIndec {
    pub iv: Interval,
    pub shift: i32,
}

impl DerivedIndec {
    pub fn module(iv: Interval) -> Self {
        DerivedIndec { iv, shift: 0 }
    }

    pub fn shifted(&self, s: i32) -> Self {
        DerivedIndec { iv: self.iv, shift: self.shift + s }
    }
}

impl std::fmt::Display for DerivedIndec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.shift == 0 {
            write!(f, "{}", self.iv)
        } else {
            write!(f, "{}[{}]", self.iv, self.shift)
        }
    }
}

/// F = τ⁻¹ ∘ [m] on indecomposables.
pub fn apply_f(d: DerivedIndec, n: usize, m: i32) -> DerivedIndec {
    if d.iv.a == 1 {
        // injective: τ⁻¹ I_b = P_b[1]
        DerivedIndec { iv: Interval::new(d.iv.b, n), shift: d.shift + 1 + m }
    } else {
        DerivedIndec { iv: Interval::new(d.iv.a - 1, d.iv.b - 1), shift: d.shift + m }
    }
}

/// F⁻¹ = τ ∘ [−m] on indecomposables.
pub fn apply_f_inv(d: DerivedIndec, n: usize, m: i32) -> DerivedIndec {
    if d.iv.b == n {
        // projective: τ P_a = I_a[−1]
        DerivedIndec { iv: Interval::new(1, d.iv.a), shift: d.shift - 1 - m }
    } else {
        DerivedIndec { iv: Interval::new(d.iv.a + 1, d.iv.b + 1), shift: d.shift - m }
    }
}

pub fn apply_f_power(d: DerivedIndec, n: usize, m: i32, k: i32) -> DerivedIndec {
    let mut out = d;
    for _ in 0..k.abs() {
        out = if k > 0 { apply_f(out, n, m) } else { apply_f_inv(out, n, m) };
    }
    out
}

/// dim Hom_D between indecomposables; hereditary, so only shift gaps 0 and 1
/// contribute (Hom and Ext¹ respectively).
pub fn hom_d_dim(u: DerivedIndec, v: DerivedIndec) -> usize {
    if v.shift == u.shift {
        hom_dim(u.iv, v.iv)
    } else if v.shift == u.shift + 1 {
        ext_dim(u.iv, v.iv)
    } else {
        0
    }
}

/// Bounded cochain complex of interval sums. `terms[k]` lives in
/// cohomological degree `lo + k`; `diffs[k]` maps it to `terms[k+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalComplex {
    pub n: usize,
    pub field: Field,
    pub lo: i32,
    pub terms: Vec<Vec<Interval>>,
    pub diffs: Vec<Matrix>,
}

impl IntervalComplex {
    pub fn empty(n: usize, field: Field) -> Self {
        IntervalComplex { n, field, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    pub fn single_term(n: usize, field: Field, deg: i32, ivs: Vec<Interval>) -> Self {
        IntervalComplex { n, field, lo: deg, terms: vec![ivs], diffs: Vec::new() }
    }

    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    pub fn term(&self, deg: i32) -> &[Interval] {
        let idx = deg - self.lo;
        if idx < 0 || idx >= self.terms.len() as i32 {
            &[]
        } else {
            &self.terms[idx as usize]
        }
    }

    /// Differential leaving degree `deg`; zero matrix of the right shape when
    /// out of range.
    pub fn diff(&self, deg: i32) -> Matrix {
        let idx = deg - self.lo;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            self.diffs[idx as usize].clone()
        } else {
            Matrix::zeros(self.field, self.term(deg + 1).len(), self.term(deg).len())
        }
    }

    pub fn is_empty_object(&self) -> bool {
        self.terms.iter().all(Vec::is_empty)
    }

    pub fn is_projective_termwise(&self) -> bool {
        self.terms.iter().flatten().all(|iv| iv.is_projective(self.n))
    }

    /// Structural checks: entry support and d∘d = 0.
    pub fn validate(&self) {
        for (k, d) in self.diffs.iter().enumerate() {
            let src = &self.terms[k];
            let tgt = &self.terms[k + 1];
            assert_eq!(d.rows(), tgt.len());
            assert_eq!(d.cols(), src.len());
            for t in 0..tgt.len() {
                for s in 0..src.len() {
                    if !d.get(t, s).is_zero() {
                        assert_eq!(hom_dim(src[s], tgt[t]), 1, "forbidden entry {} -> {}", src[s], tgt[t]);
                    }
                }
            }
        }
        for k in 0..self.diffs.len().saturating_sub(1) {
            let dd = gamma_mul(
                self.field,
                &self.terms[k],
                &self.terms[k + 1],
                &self.terms[k + 2],
                &self.diffs[k + 1],
                &self.diffs[k],
            );
            assert!(dd.is_zero(), "d∘d ≠ 0 at degree {}", self.lo + k as i32);
        }
    }

    /// Suspension: X[s]^i = X^{i+s}, differential scaled by (−1)^s.
    pub fn shifted(&self, s: i32) -> IntervalComplex {
        let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
        let diffs = self
            .diffs
            .iter()
            .map(|d| if sign == 1 { d.clone() } else { d.scale(&self.field.from_i64(-1)) })
            .collect();
        IntervalComplex { n: self.n, field: self.field, lo: self.lo - s, terms: self.terms.clone(), diffs }
    }

    /// Drops leading/trailing empty terms.
    pub fn trimmed(&self) -> IntervalComplex {
        let mut lo_idx = 0usize;
        let mut hi_idx = self.terms.len();
        while lo_idx < hi_idx && self.terms[lo_idx].is_empty() {
            lo_idx += 1;
        }
        while hi_idx > lo_idx && self.terms[hi_idx - 1].is_empty() {
            hi_idx -= 1;
        }
        if lo_idx >= hi_idx {
            return IntervalComplex::empty(self.n, self.field);
        }
        IntervalComplex {
            n: self.n,
            field: self.field,
            lo: self.lo + lo_idx as i32,
            terms: self.terms[lo_idx..hi_idx].to_vec(),
            diffs: self.diffs[lo_idx..hi_idx - 1].to_vec(),
        }
    }
}

/// Matrix product with the overlap rule: an entry contribution survives only
/// if the composite canonical map is nonzero.
pub fn gamma_mul(
    field: Field,
    src_ivs: &[Interval],
    mid_ivs: &[Interval],
    tgt_ivs: &[Interval],
    g: &Matrix,
    f: &Matrix,
) -> Matrix {
    assert_eq!(f.rows(), mid_ivs.len());
    assert_eq!(f.cols(), src_ivs.len());
    assert_eq!(g.rows(), tgt_ivs.len());
    assert_eq!(g.cols(), mid_ivs.len());
    let mut out = Matrix::zeros(field, tgt_ivs.len(), src_ivs.len());
    for t in 0..tgt_ivs.len() {
        for s in 0..src_ivs.len() {
            let mut acc = field.zero();
            for j in 0..mid_ivs.len() {
                let a = g.get(t, j);
                let b = f.get(j, s);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                if hom_dim(src_ivs[s], tgt_ivs[t]) == 1 {
                    acc = field.add(&acc, &field.mul(a, b));
                }
            }
            out.set(t, s, acc);
        }
    }
    out
}

/// Degreewise map of complexes. Matrices are keyed by source degree; missing
/// degrees are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub mats: BTreeMap<i32, Matrix>,
}

impl ChainMap {
    pub fn zero() -> Self {
        ChainMap { mats: BTreeMap::new() }
    }

    pub fn identity(x: &IntervalComplex) -> Self {
        let mut mats = BTreeMap::new();
        for deg in x.lo..=x.hi() {
            let k = x.term(deg).len();
            if k > 0 {
                mats.insert(deg, Matrix::identity(x.field, k));
            }
        }
        ChainMap { mats }
    }

    pub fn mat(&self, deg: i32, src: &IntervalComplex, tgt: &IntervalComplex) -> Matrix {
        self.mats
            .get(&deg)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(src.field, tgt.term(deg).len(), src.term(deg).len()))
    }

    pub fn insert(&mut self, deg: i32, m: Matrix) {
        if !m.is_zero() {
            self.mats.insert(deg, m);
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.mats.values().all(Matrix::is_zero)
    }

    /// Degreewise reindex for suspension: (f[s])^i = f^{i+s}.
    pub fn shifted(&self, s: i32) -> ChainMap {
        let mats = self.mats.iter().map(|(deg, m)| (deg - s, m.clone())).collect();
        ChainMap { mats }
    }

    pub fn scale(&self, field: Field, c: &Scalar) -> ChainMap {
        let mats = self.mats.iter().map(|(d, m)| (*d, m.scale(c))).collect();
        let _ = field;
        ChainMap { mats }
    }

    pub fn add(&self, other: &ChainMap, src: &IntervalComplex, tgt: &IntervalComplex) -> ChainMap {
        let mut out = ChainMap::zero();
        let degs: std::collections::BTreeSet<i32> =
            self.mats.keys().chain(other.mats.keys()).cloned().collect();
        for d in degs {
            out.insert(d, self.mat(d, src, tgt).add(&other.mat(d, src, tgt)));
        }
        out
    }

    /// Verifies the chain-map identity d_Y ∘ f = f ∘ d_X.
    pub fn is_chain_map(&self, x: &IntervalComplex, y: &IntervalComplex) -> bool {
        let lo = x.lo.min(y.lo) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        for deg in lo..=hi {
            let lhs = gamma_mul(x.field, x.term(deg), y.term(deg), y.term(deg + 1), &y.diff(deg), &self.mat(deg, x, y));
            let rhs = gamma_mul(x.field, x.term(deg), x.term(deg + 1), y.term(deg + 1), &self.mat(deg + 1, x, y), &x.diff(deg));
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// Composite of chain maps x --f--> y --g--> z.
pub fn compose_chain(
    x: &IntervalComplex,
    y: &IntervalComplex,
    z: &IntervalComplex,
    g: &ChainMap,
    f: &ChainMap,
) -> ChainMap {
    let mut out = ChainMap::zero();
    for deg in x.lo..=x.hi() {
        if x.term(deg).is_empty() || z.term(deg).is_empty() {
            continue;
        }
        let m = gamma_mul(x.field, x.term(deg), y.term(deg), z.term(deg), &g.mat(deg, y, z), &f.mat(deg, x, y));
        out.insert(deg, m);
    }
    out
}

/// Mapping cone with its triangle maps: Y → cone and cone → X[1].
pub fn cone(x: &IntervalComplex, y: &IntervalComplex, f: &ChainMap) -> (IntervalComplex, ChainMap, ChainMap) {
    debug_assert!(f.is_chain_map(x, y), "cone of a non-chain-map");
    let field = x.field;
    let lo = (x.lo - 1).min(y.lo);
    let hi = (x.hi() - 1).max(y.hi());
    if lo > hi {
        return (IntervalComplex::empty(x.n, field), ChainMap::zero(), ChainMap::zero());
    }
    let mut terms = Vec::new();
    for deg in lo..=hi {
        let mut t: Vec<Interval> = x.term(deg + 1).to_vec();
        t.extend_from_slice(y.term(deg));
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        let xs = x.term(deg + 1).len();
        let ys = y.term(deg).len();
        let xt = x.term(deg + 2).len();
        let yt = y.term(deg + 1).len();
        let mut d = Matrix::zeros(field, xt + yt, xs + ys);
        let dx = x.diff(deg + 1);
        for r in 0..xt {
            for c in 0..xs {
                d.set(r, c, field.neg(dx.get(r, c)));
            }
        }
        let fm = f.mat(deg + 1, x, y);
        for r in 0..yt {
            for c in 0..xs {
                d.set(xt + r, c, fm.get(r, c).clone());
            }
        }
        let dy = y.diff(deg);
        for r in 0..yt {
            for c in 0..ys {
                d.set(xt + r, xs + c, dy.get(r, c).clone());
            }
        }
        diffs.push(d);
    }
    let cone = IntervalComplex { n: x.n, field, lo, terms, diffs };
    debug_assert!({
        cone.validate();
        true
    });
    // inclusion of Y
    let mut incl = ChainMap::zero();
    for deg in y.lo..=y.hi() {
        let xs = x.term(deg + 1).len();
        let ys = y.term(deg).len();
        if ys == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, xs + ys, ys);
        for r in 0..ys {
            m.set(xs + r, r, field.one());
        }
        incl.insert(deg, m);
    }
    // projection to X[1]
    let x1 = x.shifted(1);
    let mut proj = ChainMap::zero();
    for deg in x1.lo..=x1.hi() {
        let xs = x.term(deg + 1).len();
        let ys = y.term(deg).len();
        if xs == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, xs, xs + ys);
        for r in 0..xs {
            m.set(r, r, field.one());
        }
        proj.insert(deg, m);
    }
    debug_assert!(incl.is_chain_map(y, &cone));
    debug_assert!(proj.is_chain_map(&cone, &x1));
    (cone, incl, proj)
}

/// Strips contractible two-term identity summands from the differentials
/// (Gaussian elimination on complexes). Homotopy equivalent output.
pub fn minimize(c: &IntervalComplex) -> IntervalComplex {
    let mut cur = c.clone();
    'outer: loop {
        for k in 0..cur.diffs.len() {
            let src = cur.terms[k].clone();
            let tgt = cur.terms[k + 1].clone();
            for t in 0..tgt.len() {
                for s in 0..src.len() {
                    if src[s] == tgt[t] && !cur.diffs[k].get(t, s).is_zero() {
                        cur = eliminate(&cur, k, t, s);
                        continue 'outer;
                    }
                }
            }
        }
        break;
    }
    let out = cur.trimmed();
    debug_assert!({
        out.validate();
        true
    });
    out
}

fn eliminate(c: &IntervalComplex, k: usize, t: usize, s: usize) -> IntervalComplex {
    let field = c.field;
    let src = &c.terms[k];
    let tgt = &c.terms[k + 1];
    let alpha = c.diffs[k].get(t, s).clone();
    let alpha_inv = field.inv(&alpha).expect("pivot invertible");
    let keep_src: Vec<usize> = (0..src.len()).filter(|&i| i != s).collect();
    let keep_tgt: Vec<usize> = (0..tgt.len()).filter(|&i| i != t).collect();
    let mut terms = c.terms.clone();
    terms[k] = keep_src.iter().map(|&i| src[i]).collect();
    terms[k + 1] = keep_tgt.iter().map(|&i| tgt[i]).collect();
    let mut diffs = c.diffs.clone();
    // corrected middle differential: δ − γ α⁻¹ β with the overlap rule
    let mut mid = Matrix::zeros(field, keep_tgt.len(), keep_src.len());
    for (ti, &tt) in keep_tgt.iter().enumerate() {
        for (si, &ss) in keep_src.iter().enumerate() {
            let mut v = c.diffs[k].get(tt, ss).clone();
            let gamma = c.diffs[k].get(tt, s);
            let beta = c.diffs[k].get(t, ss);
            if !gamma.is_zero() && !beta.is_zero() && hom_dim(src[ss], tgt[tt]) == 1 {
                let corr = field.mul(&field.mul(gamma, &alpha_inv), beta);
                v = field.sub(&v, &corr);
            }
            mid.set(ti, si, v);
        }
    }
    diffs[k] = mid;
    if k > 0 {
        // drop the row of the removed source summand
        let prev = &c.diffs[k - 1];
        let mut m = Matrix::zeros(field, keep_src.len(), prev.cols());
        for (ri, &rr) in keep_src.iter().enumerate() {
            for cc in 0..prev.cols() {
                m.set(ri, cc, prev.get(rr, cc).clone());
            }
        }
        diffs[k - 1] = m;
    }
    if k + 1 < c.diffs.len() {
        // drop the column of the removed target summand
        let next = &c.diffs[k + 1];
        let mut m = Matrix::zeros(field, next.rows(), keep_tgt.len());
        for rr in 0..next.rows() {
            for (ci, &cc) in keep_tgt.iter().enumerate() {
                m.set(rr, ci, next.get(rr, cc).clone());
            }
        }
        diffs[k + 1] = m;
    }
    IntervalComplex { n: c.n, field, lo: c.lo, terms, diffs }
}

/// Chain maps modulo homotopy with canonical class representatives.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub field: Field,
    /// allowed coordinate positions (degree, target summand, source summand)
    pub coords: Vec<(i32, usize, usize)>,
    /// canonical representatives of a basis of classes, as coordinate vectors
    pub classes: Vec<Vec<Scalar>>,
    /// columns spanning the null-homotopic chain maps
    pub boundaries: Matrix,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn vector_of(&self, f: &ChainMap, x: &IntervalComplex, y: &IntervalComplex) -> Vec<Scalar> {
        self.coords
            .iter()
            .map(|&(deg, t, s)| f.mat(deg, x, y).get(t, s).clone())
            .collect()
    }

    pub fn chain_map_of(&self, v: &[Scalar], x: &IntervalComplex, y: &IntervalComplex) -> ChainMap {
        assert_eq!(v.len(), self.coords.len());
        let mut mats: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (idx, &(deg, t, s)) in self.coords.iter().enumerate() {
            let entry = mats
                .entry(deg)
                .or_insert_with(|| Matrix::zeros(self.field, y.term(deg).len(), x.term(deg).len()));
            entry.set(t, s, v[idx].clone());
        }
        let mut cm = ChainMap::zero();
        for (deg, m) in mats {
            cm.insert(deg, m);
        }
        cm
    }

    /// Class coordinates of a chain map with respect to the chosen basis.
    pub fn express(&self, f: &ChainMap, x: &IntervalComplex, y: &IntervalComplex) -> Vec<Scalar> {
        let v = self.vector_of(f, x, y);
        if self.classes.is_empty() {
            return Vec::new();
        }
        let ncoords = self.coords.len();
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for j in 0..self.boundaries.cols() {
            cols.push(self.boundaries.column(j));
        }
        let nb = cols.len();
        cols.extend(self.classes.iter().cloned());
        let m = Matrix::from_columns(self.field, ncoords, &cols);
        let sol = m.solve(&v).expect("map must be a chain map in this Hom space");
        sol[nb..].to_vec()
    }
}

fn coords_for_map(x: &IntervalComplex, y: &IntervalComplex, degree_offset: i32) -> Vec<(i32, usize, usize)> {
    // positions of a graded map of the given degree (0 = chain map, -1 = homotopy)
    let mut coords = Vec::new();
    if x.terms.is_empty() || y.terms.is_empty() {
        return coords;
    }
    let lo = x.lo.min(y.lo - degree_offset) - 1;
    let hi = x.hi().max(y.hi() - degree_offset) + 1;
    for deg in lo..=hi {
        let src = x.term(deg);
        let tgt = y.term(deg + degree_offset);
        for (s, siv) in src.iter().enumerate() {
            for (t, tiv) in tgt.iter().enumerate() {
                if hom_dim(*siv, *tiv) == 1 {
                    coords.push((deg, t, s));
                }
            }
        }
    }
    coords
}

/// Chain maps X → Y modulo homotopy, X and Y bounded complexes.
/// For X a complex of projectives this is the derived Hom.
pub fn hom_space(x: &IntervalComplex, y: &IntervalComplex) -> HomSpace {
    let field = x.field;
    let coords = coords_for_map(x, y, 0);
    let ncoords = coords.len();
    let index: BTreeMap<(i32, usize, usize), usize> =
        coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    // chain-map condition rows
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    if ncoords > 0 {
        let lo = x.lo.min(y.lo) - 1;
        let hi = x.hi().max(y.hi()) + 1;
        for deg in lo..=hi {
            let src = x.term(deg);
            let tgt = y.term(deg + 1);
            if src.is_empty() || tgt.is_empty() {
                continue;
            }
            let dy = y.diff(deg);
            let dx = x.diff(deg);
            for t in 0..tgt.len() {
                for s in 0..src.len() {
                    let mut row = vec![field.zero(); ncoords];
                    let mut touched = false;
                    // d_Y ∘ f contribution
                    for (j, yiv) in y.term(deg).iter().enumerate() {
                        let c = dy.get(t, j);
                        if c.is_zero() || hom_dim(src[s], *yiv) == 0 {
                            continue;
                        }
                        if hom_dim(src[s], tgt[t]) == 1 {
                            if let Some(&idx) = index.get(&(deg, j, s)) {
                                row[idx] = field.add(&row[idx], c);
                                touched = true;
                            }
                        }
                    }
                    // − f ∘ d_X contribution
                    for (r, xiv) in x.term(deg + 1).iter().enumerate() {
                        let c = dx.get(r, s);
                        if c.is_zero() || hom_dim(*xiv, tgt[t]) == 0 {
                            continue;
                        }
                        if hom_dim(src[s], tgt[t]) == 1 {
                            if let Some(&idx) = index.get(&(deg + 1, t, r)) {
                                row[idx] = field.sub(&row[idx], c);
                                touched = true;
                            }
                        }
                    }
                    if touched {
                        rows.push(row);
                    }
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(field, 0, ncoords)
    } else {
        Matrix::new(field, rows.len(), ncoords, rows.concat()).expect("system shape")
    };
    let zbasis = system.kernel_basis();
    // boundaries: images of homotopy unit vectors
    let hcoords = coords_for_map(x, y, -1);
    let mut bcols: Vec<Vec<Scalar>> = Vec::new();
    for &(hdeg, ht, hs) in &hcoords {
        // h has a single 1 at (hdeg, ht, hs): compute d_Y h + h d_X in coordinates
        let mut v = vec![field.zero(); ncoords];
        // d_Y ∘ h lands in degree hdeg at positions (hdeg, t, hs)
        let dy = y.diff(hdeg - 1);
        let hsrc_iv = x.term(hdeg)[hs];
        for (t, tiv) in y.term(hdeg).iter().enumerate() {
            let c = dy.get(t, ht);
            if c.is_zero() || hom_dim(hsrc_iv, *tiv) == 0 {
                continue;
            }
            if let Some(&idx) = index.get(&(hdeg, t, hs)) {
                v[idx] = field.add(&v[idx], c);
            }
        }
        // h ∘ d_X lands in degree hdeg − 1 at positions (hdeg−1, ht, s)
        let dx = x.diff(hdeg - 1);
        let htgt_iv = y.term(hdeg - 1)[ht];
        for (s, siv) in x.term(hdeg - 1).iter().enumerate() {
            let c = dx.get(hs, s);
            if c.is_zero() || hom_dim(*siv, htgt_iv) == 0 {
                continue;
            }
            if let Some(&idx) = index.get(&(hdeg - 1, ht, s)) {
                v[idx] = field.add(&v[idx], c);
            }
        }
        if v.iter().any(|s| !s.is_zero()) {
            bcols.push(v);
        }
    }
    let boundaries = Matrix::from_columns(field, ncoords, &bcols);
    // classes: extend the boundary span inside the chain-map space
    let mut span = bcols.clone();
    let mut current = if span.is_empty() {
        0
    } else {
        Matrix::from_columns(field, ncoords, &span).rank()
    };
    let mut classes = Vec::new();
    for z in &zbasis {
        span.push(z.clone());
        let r = Matrix::from_columns(field, ncoords, &span).rank();
        if r > current {
            current = r;
            classes.push(z.clone());
        } else {
            span.pop();
        }
    }
    // canonicalize: reduce mod boundaries, normalize leading coefficient
    let reduced = reduce_mod_columns(field, &boundaries, &classes);
    HomSpace { field, coords, classes: reduced, boundaries }
}

fn reduce_mod_columns(field: Field, cols: &Matrix, vecs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    // row-reduce the transposed column span, then eliminate pivots from each vector
    let rt = cols.transpose();
    let (rref, pivots) = rt.rref();
    vecs.iter()
        .map(|v| {
            let mut w = v.clone();
            for (row, &p) in pivots.iter().enumerate() {
                let c = w[p].clone();
                if c.is_zero() {
                    continue;
                }
                for j in 0..w.len() {
                    let delta = field.mul(&c, rref.get(row, j));
                    w[j] = field.sub(&w[j], &delta);
                }
            }
            if let Some(first) = w.iter().position(|s| !s.is_zero()) {
                let inv = field.inv(&w[first]).unwrap();
                for entry in w.iter_mut() {
                    *entry = field.mul(entry, &inv);
                }
            }
            w
        })
        .collect()
}

/// True if f is null-homotopic.
pub fn is_null_homotopic(x: &IntervalComplex, y: &IntervalComplex, f: &ChainMap) -> bool {
    if f.is_zero_map() {
        return true;
    }
    let hs = hom_space(x, y);
    if hs.dim() == 0 {
        return true;
    }
    hs.express(f, x, y).iter().all(Scalar::is_zero)
}

/// Direct sum with per-part, per-degree summand offsets.
pub fn direct_sum(parts: &[IntervalComplex]) -> (IntervalComplex, Vec<BTreeMap<i32, usize>>) {
    let nonempty: Vec<&IntervalComplex> = parts.iter().filter(|p| !p.is_empty_object()).collect();
    if nonempty.is_empty() {
        let n = parts.first().map(|p| p.n).unwrap_or(1);
        let f = parts.first().map(|p| p.field).unwrap_or(Field::default_prime());
        return (IntervalComplex::empty(n, f), vec![BTreeMap::new(); parts.len()]);
    }
    let n = nonempty[0].n;
    let field = nonempty[0].field;
    let lo = nonempty.iter().map(|p| p.lo).min().unwrap();
    let hi = nonempty.iter().map(|p| p.hi()).max().unwrap();
    let mut terms = Vec::new();
    let mut offsets = vec![BTreeMap::new(); parts.len()];
    for deg in lo..=hi {
        let mut t = Vec::new();
        for (pi, p) in parts.iter().enumerate() {
            offsets[pi].insert(deg, t.len());
            t.extend_from_slice(p.term(deg));
        }
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for deg in lo..hi {
        let rows: usize = parts.iter().map(|p| p.term(deg + 1).len()).sum();
        let cols: usize = parts.iter().map(|p| p.term(deg).len()).sum();
        let mut d = Matrix::zeros(field, rows, cols);
        for (pi, p) in parts.iter().enumerate() {
            let ro = offsets[pi][&(deg + 1)];
            let co = offsets[pi][&deg];
            let pd = p.diff(deg);
            for r in 0..p.term(deg + 1).len() {
                for c in 0..p.term(deg).len() {
                    d.set(ro + r, co + c, pd.get(r, c).clone());
                }
            }
        }
        diffs.push(d);
    }
    (IntervalComplex { n, field, lo, terms, diffs }, offsets)
}

/// Minimal complex of projectives of one derived indecomposable.
pub fn to_complex(d: DerivedIndec, n: usize, field: Field) -> IntervalComplex {
    let deg = -d.shift;
    if d.iv.is_projective(n) {
        IntervalComplex::single_term(n, field, deg, vec![d.iv])
    } else {
        let p1 = Interval::new(d.iv.b + 1, n);
        let p0 = Interval::new(d.iv.a, n);
        let mut diff = Matrix::zeros(field, 1, 1);
        diff.set(0, 0, field.one());
        IntervalComplex { n, field, lo: deg - 1, terms: vec![vec![p1], vec![p0]], diffs: vec![diff] }
    }
}

/// Cohomology representations, one per supported degree.
pub fn cohomology(c: &IntervalComplex) -> Vec<(i32, Representation)> {
    cohomology_data(c).into_iter().map(|(deg, h)| (deg, h.rep)).collect()
}

struct CohomologyAt {
    rep: Representation,
    /// how many leading basis columns span the image subspace, per vertex
    im_dims: Vec<usize>,
    /// per vertex, columns = image basis then complement basis
    bases: Vec<Matrix>,
}

fn cohomology_data(c: &IntervalComplex) -> Vec<(i32, CohomologyAt)> {
    let field = c.field;
    let n = c.n;
    let mut out = Vec::new();
    for deg in c.lo..=c.hi() {
        let term = c.term(deg);
        let mut im_dims = Vec::new();
        let mut bases = Vec::new();
        let mut h_dims = Vec::new();
        for v in 1..=n {
            let d_out = vertex_matrix(field, term, c.term(deg + 1), &c.diff(deg), v);
            let d_in = vertex_matrix(field, c.term(deg - 1), term, &c.diff(deg - 1), v);
            let dim_v = term.iter().filter(|iv| iv.contains(v)).count();
            let kernel = d_out.kernel_basis();
            let mut im_basis: Vec<Vec<Scalar>> = Vec::new();
            let mut r = 0usize;
            for j in 0..d_in.cols() {
                let col = d_in.column(j);
                let mut trial = im_basis.clone();
                trial.push(col.clone());
                let tr = Matrix::from_columns(field, dim_v, &trial).rank();
                if tr > r {
                    r = tr;
                    im_basis.push(col);
                }
            }
            let mut all = im_basis.clone();
            let mut rank_now = r;
            for k in &kernel {
                let mut trial = all.clone();
                trial.push(k.clone());
                let tr = Matrix::from_columns(field, dim_v, &trial).rank();
                if tr > rank_now {
                    rank_now = tr;
                    all.push(k.clone());
                }
            }
            h_dims.push(all.len() - im_basis.len());
            im_dims.push(im_basis.len());
            bases.push(Matrix::from_columns(field, dim_v, &all));
        }
        // induced arrows on the complement coordinates
        let mut maps = Vec::new();
        for v in 1..n {
            let arrow = term_arrow(field, term, v);
            let src_comp = h_dims[v - 1];
            let tgt_comp = h_dims[v];
            let mut m = Matrix::zeros(field, tgt_comp, src_comp);
            for j in 0..src_comp {
                let col = bases[v - 1].column(im_dims[v - 1] + j);
                let image = mat_vec(field, &arrow, &col);
                let sol = bases[v].solve(&image).expect("arrow image stays in the cocycle space");
                for i in 0..tgt_comp {
                    m.set(i, j, sol[im_dims[v] + i].clone());
                }
            }
            maps.push(m);
        }
        let rep = Representation::new(n, field, h_dims, maps);
        out.push((deg, CohomologyAt { rep, im_dims, bases }));
    }
    out
}

fn mat_vec(field: Field, m: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
    assert_eq!(m.cols(), v.len());
    (0..m.rows())
        .map(|i| {
            let mut acc = field.zero();
            for j in 0..m.cols() {
                acc = field.add(&acc, &field.mul(m.get(i, j), &v[j]));
            }
            acc
        })
        .collect()
}

/// Matrix of a term map at one vertex.
fn vertex_matrix(field: Field, src: &[Interval], tgt: &[Interval], m: &Matrix, v: usize) -> Matrix {
    let src_at: Vec<usize> = src.iter().enumerate().filter(|(_, iv)| iv.contains(v)).map(|(i, _)| i).collect();
    let tgt_at: Vec<usize> = tgt.iter().enumerate().filter(|(_, iv)| iv.contains(v)).map(|(i, _)| i).collect();
    let mut out = Matrix::zeros(field, tgt_at.len(), src_at.len());
    for (ti, &t) in tgt_at.iter().enumerate() {
        for (si, &s) in src_at.iter().enumerate() {
            let e = m.get(t, s);
            if !e.is_zero() && canonical_nonzero_at(src[s], tgt[t], v) {
                out.set(ti, si, e.clone());
            }
        }
    }
    out
}

/// Arrow v → v+1 of a term, in vertex coordinates.
fn term_arrow(field: Field, ivs: &[Interval], v: usize) -> Matrix {
    let src_at: Vec<usize> = ivs.iter().enumerate().filter(|(_, iv)| iv.contains(v)).map(|(i, _)| i).collect();
    let tgt_at: Vec<usize> = ivs.iter().enumerate().filter(|(_, iv)| iv.contains(v + 1)).map(|(i, _)| i).collect();
    let mut out = Matrix::zeros(field, tgt_at.len(), src_at.len());
    for (ti, &t) in tgt_at.iter().enumerate() {
        for (si, &s) in src_at.iter().enumerate() {
            if t == s {
                out.set(ti, si, field.one());
            }
        }
    }
    out
}

/// Krull-Schmidt decomposition in the derived category: interval summands of
/// H^i contribute (interval, −i).
pub fn cohomology_split(c: &IntervalComplex) -> Vec<DerivedIndec> {
    let mut out = Vec::new();
    for (deg, rep) in cohomology(c) {
        for iv in decompose(&rep) {
            out.push(DerivedIndec { iv, shift: -deg });
        }
    }
    out.sort();
    out
}

/// Cohomology dimensions agree and the induced maps are vertexwise bijections.
pub fn is_quasi_iso(x: &IntervalComplex, y: &IntervalComplex, f: &ChainMap) -> bool {
    let field = x.field;
    let n = x.n;
    let xdata = cohomology_data(x);
    let ydata = cohomology_data(y);
    let lo = x.lo.min(y.lo);
    let hi = x.hi().max(y.hi());
    for deg in lo..=hi {
        let xd = xdata.iter().find(|(d, _)| *d == deg).map(|(_, h)| h);
        let yd = ydata.iter().find(|(d, _)| *d == deg).map(|(_, h)| h);
        for v in 1..=n {
            let xdim = xd.map(|h| h.rep.dims[v - 1]).unwrap_or(0);
            let ydim = yd.map(|h| h.rep.dims[v - 1]).unwrap_or(0);
            if xdim != ydim {
                return false;
            }
            if xdim == 0 {
                continue;
            }
            let (xh, yh) = (xd.unwrap(), yd.unwrap());
            let fv = vertex_matrix(field, x.term(deg), y.term(deg), &f.mat(deg, x, y), v);
            let mut m = Matrix::zeros(field, ydim, xdim);
            for j in 0..xdim {
                let col = xh.bases[v - 1].column(xh.im_dims[v - 1] + j);
                let image = mat_vec(field, &fv, &col);
                let Some(sol) = yh.bases[v - 1].solve(&image) else {
                    return false;
                };
                for i in 0..ydim {
                    m.set(i, j, sol[yh.im_dims[v - 1] + i].clone());
                }
            }
            if !m.is_invertible() {
                return false;
            }
        }
    }
    true
}

/// Nakayama functor on a complex of projectives: P_i ↦ I_i termwise, same
/// matrices (canonical maps go to canonical maps, strictly multiplicatively).
pub fn nu(c: &IntervalComplex) -> IntervalComplex {
    assert!(c.is_projective_termwise(), "ν needs projective terms");
    let terms = c
        .terms
        .iter()
        .map(|t| t.iter().map(|iv| Interval::new(1, iv.a)).collect())
        .collect();
    let out = IntervalComplex { n: c.n, field: c.field, lo: c.lo, terms, diffs: c.diffs.clone() };
    debug_assert!({
        out.validate();
        true
    });
    out
}

/// A complex of projectives quasi-isomorphic to the input, with the
/// comparison map.
pub struct Resolved {
    pub q: IntervalComplex,
    pub eps: ChainMap,
}

/// Projective resolution of a bounded interval-sum complex, built by
/// resolving the lowest term and coning onto the resolution of the rest.
pub fn resolve(c: &IntervalComplex) -> Resolved {
    let c = c.trimmed();
    let field = c.field;
    let n = c.n;
    if c.is_empty_object() {
        return Resolved { q: IntervalComplex::empty(n, field), eps: ChainMap::zero() };
    }
    if c.terms.len() == 1 {
        return resolve_single(&c, c.lo);
    }
    // C = cone(u : A[−1] → B) with A the lowest term, B the truncation above it
    let a = IntervalComplex::single_term(n, field, c.lo, c.terms[0].clone());
    let b = IntervalComplex {
        n,
        field,
        lo: c.lo + 1,
        terms: c.terms[1..].to_vec(),
        diffs: c.diffs[1..].to_vec(),
    };
    let a_minus = a.shifted(-1);
    let mut u = ChainMap::zero();
    u.insert(c.lo + 1, c.diffs[0].clone());
    debug_assert!(u.is_chain_map(&a_minus, &b));
    let ra = resolve(&a);
    let rb = resolve(&b);
    let qa_minus = ra.q.shifted(-1);
    let eps_a_minus = ra.eps.shifted(-1);
    // φ = u ∘ εA[−1] : QA[−1] → B
    let phi = compose_chain(&qa_minus, &a_minus, &b, &u, &eps_a_minus);
    let (g, h) = lift_with_homotopy(&qa_minus, &rb.q, &b, &rb.eps, &phi);
    let (q, _, _) = cone(&qa_minus, &rb.q, &g);
    // ε = [[εA, 0], [h, εB]] degreewise
    let mut eps = ChainMap::zero();
    for deg in q.lo..=q.hi() {
        let xs = qa_minus.term(deg + 1).len();
        let ys = rb.q.term(deg).len();
        let rows_a = a_minus.term(deg + 1).len();
        let rows_b = b.term(deg).len();
        if xs + ys == 0 || rows_a + rows_b == 0 {
            continue;
        }
        let mut m = Matrix::zeros(field, rows_a + rows_b, xs + ys);
        let am = eps_a_minus.mat(deg + 1, &qa_minus, &a_minus);
        for r in 0..rows_a {
            for cc in 0..xs {
                m.set(r, cc, am.get(r, cc).clone());
            }
        }
        let hm = h.mat(deg + 1, &qa_minus, &b); // h^{deg+1}: QA[−1]^{deg+1} → B^deg
        for r in 0..rows_b {
            for cc in 0..xs {
                m.set(rows_a + r, cc, hm.get(r, cc).clone());
            }
        }
        let bm = rb.eps.mat(deg, &rb.q, &b);
        for r in 0..rows_b {
            for cc in 0..ys {
                m.set(rows_a + r, xs + cc, bm.get(r, cc).clone());
            }
        }
        eps.insert(deg, m);
    }
    assert!(eps.is_chain_map(&q, &c), "resolution comparison map must be a chain map");
    debug_assert!(is_quasi_iso(&q, &c, &eps), "resolution must be a quasi-isomorphism");
    Resolved { q, eps }
}

fn resolve_single(c: &IntervalComplex, deg: i32) -> Resolved {
    let field = c.field;
    let n = c.n;
    let ivs = c.term(deg).to_vec();
    let p0: Vec<Interval> = ivs.iter().map(|iv| Interval::new(iv.a, n)).collect();
    let syz: Vec<(usize, Interval)> = ivs
        .iter()
        .enumerate()
        .filter(|(_, iv)| !iv.is_projective(n))
        .map(|(k, iv)| (k, Interval::new(iv.b + 1, n)))
        .collect();
    let mut d = Matrix::zeros(field, p0.len(), syz.len());
    for (j, (parent, _)) in syz.iter().enumerate() {
        d.set(*parent, j, field.one());
    }
    let q = if syz.is_empty() {
        IntervalComplex::single_term(n, field, deg, p0.clone())
    } else {
        IntervalComplex {
            n,
            field,
            lo: deg - 1,
            terms: vec![syz.iter().map(|(_, iv)| *iv).collect(), p0.clone()],
            diffs: vec![d],
        }
    };
    let mut eps = ChainMap::zero();
    if !ivs.is_empty() {
        eps.insert(deg, Matrix::identity(field, ivs.len()));
    }
    debug_assert!(eps.is_chain_map(&q, c));
    Resolved { q, eps }
}

/// Finds g : Q → QB and a homotopy h : Q → B with εB∘g − φ = d∘h + h∘d.
/// Exists whenever Q has projective terms and εB is a quasi-isomorphism.
pub fn lift_with_homotopy(
    q: &IntervalComplex,
    qb: &IntervalComplex,
    b: &IntervalComplex,
    eps_b: &ChainMap,
    phi: &ChainMap,
) -> (ChainMap, ChainMap) {
    let field = q.field;
    let g_coords = coords_for_map(q, qb, 0);
    let h_coords = coords_for_map(q, b, -1);
    let ng = g_coords.len();
    let nvars = ng + h_coords.len();
    let gi: BTreeMap<(i32, usize, usize), usize> =
        g_coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    let hi_map: BTreeMap<(i32, usize, usize), usize> =
        h_coords.iter().enumerate().map(|(i, c)| (*c, i + ng)).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    // chain-map rows for g
    let lo = q.lo.min(qb.lo) - 1;
    let hi = q.hi().max(qb.hi()) + 1;
    for deg in lo..=hi {
        let src = q.term(deg);
        let tgt = qb.term(deg + 1);
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let dqb = qb.diff(deg);
        let dq = q.diff(deg);
        for t in 0..tgt.len() {
            for s in 0..src.len() {
                let mut row = vec![field.zero(); nvars];
                let mut touched = false;
                for (j, miv) in qb.term(deg).iter().enumerate() {
                    let cfd = dqb.get(t, j);
                    if cfd.is_zero() || hom_dim(src[s], *miv) == 0 || hom_dim(src[s], tgt[t]) == 0 {
                        continue;
                    }
                    if let Some(&idx) = gi.get(&(deg, j, s)) {
                        row[idx] = field.add(&row[idx], cfd);
                        touched = true;
                    }
                }
                for (r, riv) in q.term(deg + 1).iter().enumerate() {
                    let cfd = dq.get(r, s);
                    if cfd.is_zero() || hom_dim(*riv, tgt[t]) == 0 || hom_dim(src[s], tgt[t]) == 0 {
                        continue;
                    }
                    if let Some(&idx) = gi.get(&(deg + 1, t, r)) {
                        row[idx] = field.sub(&row[idx], cfd);
                        touched = true;
                    }
                }
                if touched {
                    rows.push(row);
                    rhs.push(field.zero());
                }
            }
        }
    }
    // εB∘g − d_B∘h − h∘d_Q = φ, degreewise
    let lo2 = q.lo.min(b.lo) - 1;
    let hi2 = q.hi().max(b.hi()) + 1;
    for deg in lo2..=hi2 {
        let src = q.term(deg);
        let tgt = b.term(deg);
        if src.is_empty() || tgt.is_empty() {
            continue;
        }
        let em = eps_b.mat(deg, qb, b);
        let db = b.diff(deg - 1);
        let dq = q.diff(deg);
        let pm = phi.mat(deg, q, b);
        for t in 0..tgt.len() {
            for s in 0..src.len() {
                let mut row = vec![field.zero(); nvars];
                if hom_dim(src[s], tgt[t]) == 1 {
                    for (j, miv) in qb.term(deg).iter().enumerate() {
                        let cfd = em.get(t, j);
                        if cfd.is_zero() || hom_dim(src[s], *miv) == 0 {
                            continue;
                        }
                        if let Some(&idx) = gi.get(&(deg, j, s)) {
                            row[idx] = field.add(&row[idx], cfd);
                        }
                    }
                    for (k, kiv) in b.term(deg - 1).iter().enumerate() {
                        let cfd = db.get(t, k);
                        if cfd.is_zero() || hom_dim(src[s], *kiv) == 0 {
                            continue;
                        }
                        if let Some(&idx) = hi_map.get(&(deg, k, s)) {
                            row[idx] = field.sub(&row[idx], cfd);
                        }
                    }
                    for (r, riv) in q.term(deg + 1).iter().enumerate() {
                        let cfd = dq.get(r, s);
                        if cfd.is_zero() || hom_dim(*riv, tgt[t]) == 0 {
                            continue;
                        }
                        if let Some(&idx) = hi_map.get(&(deg + 1, t, r)) {
                            row[idx] = field.sub(&row[idx], cfd);
                        }
                    }
                }
                let target = pm.get(t, s).clone();
                if row.iter().any(|x| !x.is_zero()) || !target.is_zero() {
                    rows.push(row);
                    rhs.push(target);
                }
            }
        }
    }
    let system = if rows.is_empty() {
        Matrix::zeros(field, 0, nvars)
    } else {
        Matrix::new(field, rows.len(), nvars, rows.concat()).expect("lift system shape")
    };
    let sol = system.solve(&rhs).expect("lift along a quasi-isomorphism exists");
    let mut g = ChainMap::zero();
    {
        let mut mats: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (idx, &(deg, t, s)) in g_coords.iter().enumerate() {
            let entry = mats
                .entry(deg)
                .or_insert_with(|| Matrix::zeros(field, qb.term(deg).len(), q.term(deg).len()));
            entry.set(t, s, sol[idx].clone());
        }
        for (deg, m) in mats {
            g.insert(deg, m);
        }
    }
    let mut h = ChainMap::zero();
    {
        let mut mats: BTreeMap<i32, Matrix> = BTreeMap::new();
        for (idx, &(deg, t, s)) in h_coords.iter().enumerate() {
            let entry = mats
                .entry(deg)
                .or_insert_with(|| Matrix::zeros(field, b.term(deg - 1).len(), q.term(deg).len()));
            entry.set(t, s, sol[ng + idx].clone());
        }
        for (deg, m) in mats {
            h.insert(deg, m);
        }
    }
    debug_assert!(g.is_chain_map(q, qb));
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    const F: Field = Field::Prime(32003);

    fn di(a: usize, b: usize, s: i32) -> DerivedIndec {
        DerivedIndec { iv: Interval::new(a, b), shift: s }
    }

    #[test]
    fn f_round_trips() {
        for n in 1..=5 {
            for m in 1..=3 {
                for iv in Interval::all(n) {
                    for s in -3..=3 {
                        let d = di(iv.a, iv.b, s);
                        assert_eq!(apply_f_inv(apply_f(d, n, m), n, m), d);
                        assert_eq!(apply_f(apply_f_inv(d, n, m), n, m), d);
                    }
                }
            }
        }
    }

    #[test]
    fn f_on_a1() {
        // τ⁻¹[1] doubles the shift on the simple of A_1
        let s = di(1, 1, 0);
        assert_eq!(apply_f(s, 1, 1), di(1, 1, 2));
    }

    #[test]
    fn f_preserves_hom_dims() {
        for n in 1..=4 {
            for m in 1..=2 {
                for x in Interval::all(n) {
                    for y in Interval::all(n) {
                        for s in 0..=1 {
                            let u = di(x.a, x.b, 0);
                            let v = di(y.a, y.b, s);
                            assert_eq!(
                                hom_d_dim(u, v),
                                hom_d_dim(apply_f(u, n, m), apply_f(v, n, m)),
                                "F equivariance of Hom dims at {u} -> {v}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn to_complex_round_trip() {
        for n in 1..=5 {
            for iv in Interval::all(n) {
                for s in -2..=2 {
                    let d = di(iv.a, iv.b, s);
                    let c = to_complex(d, n, F);
                    c.validate();
                    assert_eq!(cohomology_split(&c), vec![d]);
                    // shift consistency
                    let c0 = to_complex(di(iv.a, iv.b, 0), n, F).shifted(s);
                    assert_eq!(cohomology_split(&c0), vec![d]);
                }
            }
        }
    }

    #[test]
    fn hom_space_matches_module_dims() {
        for n in 1..=4 {
            for x in Interval::all(n) {
                for y in Interval::all(n) {
                    for s in -2..=2i32 {
                        let cx = to_complex(di(x.a, x.b, 0), n, F);
                        let cy = to_complex(di(y.a, y.b, s), n, F);
                        let expected = hom_d_dim(di(x.a, x.b, 0), di(y.a, y.b, s));
                        assert_eq!(
                            hom_space(&cx, &cy).dim(),
                            expected,
                            "Hom_D({x}, {y}[{s}]) in A_{n}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn endomorphisms_of_indecomposables() {
        for n in 1..=4 {
            for iv in Interval::all(n) {
                let c = to_complex(di(iv.a, iv.b, 0), n, F);
                let hs = hom_space(&c, &c);
                assert_eq!(hs.dim(), 1);
                // identity is a nonzero class
                let id = ChainMap::identity(&c);
                let coords = hs.express(&id, &c, &c);
                assert!(coords.iter().any(|s| !s.is_zero()));
            }
        }
    }

    #[test]
    fn cone_of_identity_vanishes() {
        let c = to_complex(di(1, 1, 0), 2, F);
        let id = ChainMap::identity(&c);
        let (cn, _, _) = cone(&c, &c, &id);
        let min = minimize(&cn);
        assert!(min.is_empty_object());
    }

    #[test]
    fn cone_of_zero_splits() {
        let x = to_complex(di(1, 1, 0), 2, F);
        let y = to_complex(di(2, 2, 0), 2, F);
        let (cn, _, _) = cone(&x, &y, &ChainMap::zero());
        let mut expected = vec![di(2, 2, 0), di(1, 1, 1)];
        expected.sort();
        assert_eq!(cohomology_split(&cn), expected);
    }

    #[test]
    fn cone_of_projective_inclusion() {
        // P_2 → P_1 in rank 2 has cone the simple top in degree 0
        let x = to_complex(di(2, 2, 0), 2, F);
        let y = to_complex(di(1, 2, 0), 2, F);
        let hs = hom_space(&x, &y);
        assert_eq!(hs.dim(), 1);
        let f = hs.chain_map_of(&hs.classes[0], &x, &y);
        let (cn, _, _) = cone(&x, &y, &f);
        assert_eq!(cohomology_split(&cn), vec![di(1, 1, 0)]);
    }

    #[test]
    fn compose_identities_and_associativity() {
        let n = 3;
        let x = to_complex(di(1, 2, 0), n, F);
        let id = ChainMap::identity(&x);
        for y_iv in Interval::all(n) {
            let y = to_complex(di(y_iv.a, y_iv.b, 0), n, F);
            let hxy = hom_space(&x, &y);
            for class in &hxy.classes {
                let f = hxy.chain_map_of(class, &x, &y);
                let fid = compose_chain(&x, &x, &y, &f, &id);
                assert_eq!(hxy.express(&fid, &x, &y), hxy.express(&f, &x, &y));
            }
        }
        // associativity on an honest chain of maps
        let a = to_complex(di(3, 3, 0), n, F);
        let b = to_complex(di(2, 3, 0), n, F);
        let c = to_complex(di(1, 3, 0), n, F);
        let d = to_complex(di(1, 2, 0), n, F);
        let f1 = hom_space(&a, &b);
        let f2 = hom_space(&b, &c);
        let f3 = hom_space(&c, &d);
        assert!(f1.dim() == 1 && f2.dim() == 1 && f3.dim() == 1);
        let m1 = f1.chain_map_of(&f1.classes[0], &a, &b);
        let m2 = f2.chain_map_of(&f2.classes[0], &b, &c);
        let m3 = f3.chain_map_of(&f3.classes[0], &c, &d);
        let left = compose_chain(&a, &c, &d, &m3, &compose_chain(&a, &b, &c, &m2, &m1));
        let right = compose_chain(&a, &b, &d, &compose_chain(&b, &c, &d, &m3, &m2), &m1);
        let had = hom_space(&a, &d);
        assert_eq!(had.express(&left, &a, &d), had.express(&right, &a, &d));
    }

    #[test]
    fn resolve_injective_complexes() {
        // ν of canonical complexes re-resolves to a quasi-isomorphic projective complex
        for n in 1..=4usize {
            for iv in Interval::all(n) {
                let c = to_complex(di(iv.a, iv.b, 0), n, F);
                let nuc = nu(&c);
                let r = resolve(&nuc);
                assert!(r.q.is_projective_termwise());
                assert!(r.eps.is_chain_map(&r.q, &nuc));
                assert!(is_quasi_iso(&r.q, &nuc, &r.eps));
                // object-level Nakayama: ν M[a,b] has the right class
                let split = cohomology_split(&r.q);
                let expected = if iv.b == n {
                    vec![di(1, iv.a, 0)]
                } else {
                    // ν of a non-projective interval is the AR translate shifted by one
                    vec![di(iv.a + 1, iv.b + 1, 1)]
                };
                assert_eq!(split, expected, "ν of {iv} in A_{n}");
            }
        }
    }

    #[test]
    fn minimize_keeps_class() {
        // glue a contractible summand onto a complex and minimize it away
        let n = 2;
        let x = to_complex(di(1, 1, 0), n, F);
        let contractible = {
            let iv = Interval::new(1, 2);
            let mut d = Matrix::zeros(F, 1, 1);
            d.set(0, 0, F.one());
            IntervalComplex { n, field: F, lo: -1, terms: vec![vec![iv], vec![iv]], diffs: vec![d] }
        };
        let (sum, _) = direct_sum(&[x.clone(), contractible]);
        sum.validate();
        let min = minimize(&sum);
        assert_eq!(cohomology_split(&min), cohomology_split(&x));
        assert_eq!(min.terms.iter().map(Vec::len).sum::<usize>(), 2);
    }
}
