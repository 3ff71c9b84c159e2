//! Fuchsian holonomy of a surface given by Fenchel-Nielsen coordinates, and
//! a bounded search for short closed geodesics.
//!
//! # Presentation
//!
//! Each pair of pants is realized in normal form: boundaries 0 and 1
//! translate along geodesics orthogonal to the unit circle, symmetric about
//! `i` at the seam distance from each other, and boundary 2 closes the
//! product (`X0 X1 X2 = 1`).
//! The pants are glued along a breadth-first spanning tree of the pants
//! graph (rooted at the pants of least eccentricity, lowest index on ties; curves
//! visited in index order):
//!
//! * the root contributes generators `x0 = X0` and `x1 = X1`;
//! * every other pants, reached through its slot `s`, contributes one
//!   generator: its boundary `s + 1` (mod 3);
//! * every curve not in the tree contributes a stable letter, in curve
//!   order, conjugating the boundary on its second side to the inverse of
//!   the boundary on its first side.
//!
//! A genus-`g` surface therefore has `3g - 1` generators. Words are written
//! `x<i>` / `X<i>` (inverse).
//!
//! # Subsurfaces
//!
//! Cutting along a set of pants curves splits the pants graph into
//! components. Each component gets its own representation built the same
//! way with cut curves neither in the tree nor given stable letters, so it
//! presents the free fundamental group of the bordered subsurface. Tiny
//! curves are always cut before scanning: the closed-surface matrices grow
//! like `exp(diameter)` and lose the digits needed to resolve short words.

mod mat;
mod scan;
mod word;

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::scalar::Real;
use crate::surface::{FnCoordinates, PantsDecomposition, Slot};

use mat::CompensatedProduct;
pub use mat::Mat2;
pub use scan::{
    assess_systole, short_geodesic_scan, systole_check, GeodesicCandidate, ScanConfig, ScanOutcome, SystoleAssessment,
    DEFAULT_SCAN_BUDGET, DEFAULT_SCAN_DEPTH,
};
pub use word::{Letter, Word};

/// Tolerance band above `|trace| = 2` treated as non-hyperbolic.
pub const TRACE_TOLERANCE: f64 = 1e-9;

/// Maximum determinant drift accepted for a generator, relative to `|g|^2`
/// (the rounding floor of a determinant evaluated in floating point).
pub const DET_TOLERANCE: f64 = 1e-10;

/// Largest accepted `eps * |g|^2` for a generator.
const CONDITION_LIMIT: f64 = 1e-3;

/// Relative accuracy required of every pants-curve trace after the build.
pub const CURVE_TRACE_TOLERANCE: f64 = 1e-8;

/// Products are renormalized to unit determinant every this many factors.
pub const RENORMALIZE_EVERY: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GeneratorKind {
    /// Boundary-parallel generator of a pair of pants.
    PantsBoundary { pants: usize, position: u8 },
    /// Stable letter of a curve outside the spanning tree.
    StableLetter { curve: usize },
}

/// Holonomy of the whole surface, or of one component of the surface cut
/// along some pants curves (then a free group).
#[derive(Debug, Clone, Serialize)]
pub struct HolonomyRepresentation<T> {
    generators: Vec<Mat2<T>>,
    inverses: Vec<Mat2<T>>,
    /// Entrywise magnitude bounds of the computation of each generator; the
    /// rounding error of a generator is a small multiple of `eps` times this.
    bounds: Vec<Mat2<T>>,
    kinds: Vec<GeneratorKind>,
    pants: Vec<usize>,
    curve_words: Vec<Option<Word>>,
    side_words: Vec<[Option<Word>; 2]>,
    curve_lengths: Vec<T>,
    tree_curves: Vec<bool>,
    cut_curves: Vec<bool>,
}

impl<T: Real> HolonomyRepresentation<T> {
    pub fn generators(&self) -> &[Mat2<T>] {
        &self.generators
    }

    pub fn generator_kinds(&self) -> &[GeneratorKind] {
        &self.kinds
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    /// Pants covered, in increasing order.
    pub fn pants(&self) -> &[usize] {
        &self.pants
    }

    /// Whether this represents the closed surface rather than a component.
    pub fn is_closed_surface(&self) -> bool {
        self.cut_curves.iter().all(|c| !c)
    }

    /// Word representing pants curve `i` as seen from its first side in this
    /// component; `None` for curves not bounding a covered pants.
    pub fn curve_word(&self, curve: usize) -> Option<&Word> {
        self.curve_words[curve].as_ref()
    }

    pub fn curve_words(&self) -> &[Option<Word>] {
        &self.curve_words
    }

    /// Words of pants curve `i` as seen from each of its two sides. On the
    /// closed surface they are conjugate up to inversion.
    pub fn side_words(&self) -> &[[Option<Word>; 2]] {
        &self.side_words
    }

    pub fn curve_lengths(&self) -> &[T] {
        &self.curve_lengths
    }

    /// Whether curve `i` is an edge of the spanning tree (no stable letter).
    pub fn is_tree_curve(&self, curve: usize) -> bool {
        self.tree_curves[curve]
    }

    /// Whether the surface was cut along curve `i`.
    pub fn is_cut_curve(&self, curve: usize) -> bool {
        self.cut_curves[curve]
    }

    pub fn letter_matrix(&self, l: Letter) -> Mat2<T> {
        if l.is_inverse() {
            self.inverses[l.generator()]
        } else {
            self.generators[l.generator()]
        }
    }

    /// Entrywise bound on the magnitudes that went into a letter's matrix.
    pub fn letter_bound(&self, l: Letter) -> Mat2<T> {
        let b = self.bounds[l.generator()];
        if l.is_inverse() {
            Mat2::new(b.d, b.b, b.c, b.a)
        } else {
            b
        }
    }

    /// Product of the letter matrices, accumulated in compensated
    /// arithmetic and rounded once at the end.
    pub fn evaluate(&self, word: &Word) -> Result<Mat2<T>> {
        Ok(self.product(word)?.matrix())
    }

    /// Trace of the word's image, accurate to about `eps^2` times the size
    /// of the partial products.
    pub fn trace(&self, word: &Word) -> Result<T> {
        Ok(self.product(word)?.trace())
    }

    fn product(&self, word: &Word) -> Result<CompensatedProduct<T>> {
        let mut m = CompensatedProduct::identity();
        for &l in word.letters() {
            if l.generator() >= self.generators.len() {
                return Err(domain("evaluate", format!("letter {l} out of range")));
            }
            m = m.mul(&self.letter_matrix(l));
        }
        Ok(m)
    }
}

pub(crate) fn renormalize<T: Real>(m: Mat2<T>) -> Result<Mat2<T>> {
    let drift = (m.det() - T::one()).abs() / m.norm_sq().max(T::one());
    if !(drift <= T::tol(DET_TOLERANCE)) {
        return Err(Error::Numerical { op: "renormalize", msg: format!("determinant drift {drift}") });
    }
    m.normalized().ok_or(Error::Numerical { op: "renormalize", msg: "nonpositive determinant".into() })
}

/// Hyperbolic length `2 arccosh(|tr| / 2)` of the element represented by a
/// nonempty cyclically reduced word.
pub fn word_length<T: Real>(rep: &HolonomyRepresentation<T>, word: &Word) -> Result<T> {
    if !word.is_cyclically_reduced() {
        return Err(domain("word_length", format!("word {word:?} is empty or not cyclically reduced")));
    }
    trace_length(rep.trace(word)?)
}

pub(crate) fn trace_length<T: Real>(trace: T) -> Result<T> {
    let t = trace.abs();
    let tol = T::tol(TRACE_TOLERANCE);
    if !(t > T::lit(2.0) + tol) {
        return Err(Error::NonHyperbolic { trace_abs: t.to_f64_lossy(), tolerance: tol.to_f64_lossy() });
    }
    Ok(T::lit(2.0) * (t / T::lit(2.0)).acosh())
}

/// Length of the common perpendicular between boundaries 0 and 1 of a pair
/// of pants with boundary lengths `(l0, l1, l2)` (right-angled hexagon).
pub fn seam_length<T: Real>(l0: T, l1: T, l2: T) -> T {
    let two = T::lit(2.0);
    let (h0, h1, h2) = (l0 / two, l1 / two, l2 / two);
    ((h2.cosh() + h0.cosh() * h1.cosh()) / (h0.sinh() * h1.sinh())).acosh()
}

/// Boundary matrices `[X0, X1, X2]` of a pair of pants in normal form, with
/// `X0 X1 X2 = 1` and `|tr Xi| = 2 cosh(li / 2)`.
///
/// The seam from `X0` to `X1` is centred on `i` so that two short boundaries
/// far apart still give matrices of moderate size.
pub fn pants_boundaries<T: Real>(lengths: [T; 3]) -> [Mat2<T>; 3] {
    let [l0, l1, l2] = lengths;
    let half = seam_length(l0, l1, l2) / T::lit(2.0);
    let a = axis_translation(-half, l0);
    let b = axis_translation(half, -l1);
    let c = (a * b).inv();
    [a, b, c]
}

/// Translation by `dist` along the image of the imaginary axis under a
/// translation by `offset` along the unit circle, in closed form.
fn axis_translation<T: Real>(offset: T, dist: T) -> Mat2<T> {
    let (ch, sh) = ((dist / T::lit(2.0)).cosh(), (dist / T::lit(2.0)).sinh());
    let (co, so) = (offset.cosh(), offset.sinh());
    Mat2::new(ch + sh * co, -(sh * so), sh * so, ch - sh * co)
}

/// Frame for boundary `x` of a pants: `N` with `N^-1 x N` an upward
/// translation along the imaginary axis, the pants on the right (`Re > 0`)
/// and `N(i)` the foot of the seam towards boundary `toward`.
fn boundary_frame<T: Real>(x: &Mat2<T>, toward: &Mat2<T>) -> Result<Mat2<T>> {
    const OP: &str = "boundary_frame";
    let (big, small) =
        x.hyperbolic_eigenvalues().ok_or(Error::Numerical { op: OP, msg: "boundary is not hyperbolic".into() })?;
    let (ax, ay) = x.eigenvector(big);
    let (mut rx, mut ry) = x.eigenvector(small);
    let mut det = ax * ry - rx * ay;
    if det < T::zero() {
        rx = -rx;
        ry = -ry;
        det = -det;
    }
    if !(det > T::zero()) {
        return Err(Error::Numerical { op: OP, msg: "degenerate eigenbasis".into() });
    }
    let s = T::one() / det.sqrt();
    let frame = Mat2::new(ax * s, rx * s, ay * s, ry * s);

    let other = frame.inv() * *toward * frame;
    let (ob, os) =
        other.hyperbolic_eigenvalues().ok_or(Error::Numerical { op: OP, msg: "seam target not hyperbolic".into() })?;
    let fixed = |lambda| {
        let (p, q) = other.eigenvector(lambda);
        p / q
    };
    let (u, v) = (fixed(ob), fixed(os));
    if !(u > T::zero() && v > T::zero()) {
        return Err(Error::Numerical {
            op: OP,
            msg: format!("pants not on the right of its boundary (fixed points {u}, {v})"),
        });
    }
    let h = (u * v).sqrt().sqrt();
    Ok(frame * Mat2::diag(h, T::one() / h))
}

/// Gluing map taking the frame of `(q, s')` to the far side of `(p, s)`,
/// sheared by `twist` (left twists positive).
fn gluing<T: Real>(frame_p: &Mat2<T>, frame_q: &Mat2<T>, twist: T) -> Mat2<T> {
    *frame_p * Mat2::translation(-twist) * Mat2::half_turn() * frame_q.inv()
}

/// `N` in `SL(2, R)` taking `i` close to the point minimizing
/// `sum ||N^-1 g N||^2` over the generators, found by pattern search in
/// `(x, log y)`.
fn balancing_frame<T: Real>(generators: &[Mat2<T>]) -> Mat2<T> {
    let frame = |x: T, ly: T| {
        let r = (ly / T::lit(2.0)).exp();
        Mat2::new(r, x / r, T::zero(), T::one() / r)
    };
    let cost = |x: T, ly: T| {
        let n = frame(x, ly);
        let ni = n.inv();
        generators.iter().fold(T::zero(), |acc, &g| acc + (ni * g * n).norm_sq()).ln()
    };
    let (mut x, mut ly) = (T::zero(), T::zero());
    let mut best = cost(x, ly);
    let mut step = T::one();
    while step > T::tol(1e-4) {
        let y = ly.exp();
        let moves = [(step * y, T::zero()), (-step * y, T::zero()), (T::zero(), step), (T::zero(), -step)];
        match moves.iter().map(|&(dx, dy)| (x + dx, ly + dy)).find(|&(nx, nly)| cost(nx, nly) < best) {
            Some((nx, nly)) => {
                x = nx;
                ly = nly;
                best = cost(x, ly);
            }
            None => step = step / T::lit(2.0),
        }
    }
    frame(x, ly)
}

/// Forward rounding-error bound on the trace of a word's image.
pub fn trace_error_bound<T: Real>(rep: &HolonomyRepresentation<T>, word: &[Letter]) -> T {
    let bound = word.iter().fold(Mat2::identity(), |acc, &l| acc * rep.letter_bound(l));
    scan::trace_error(T::epsilon(), word.len(), &bound)
}

/// Connected components of the pants graph with the `cut` curves removed,
/// each sorted, ordered by smallest pants index.
pub fn pants_components(decomp: &PantsDecomposition, cut: &[bool]) -> Vec<Vec<usize>> {
    let n = decomp.num_pants();
    let adj = adjacency(decomp, cut);
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let dist = distances(&adj, start);
        let members: Vec<usize> = (0..n).filter(|&p| dist[p] != usize::MAX).collect();
        for &p in &members {
            comp[p] = out.len();
        }
        out.push(members);
    }
    out
}

fn adjacency(decomp: &PantsDecomposition, cut: &[bool]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); decomp.num_pants()];
    for (ci, c) in decomp.curves().iter().enumerate() {
        if cut[ci] {
            continue;
        }
        let [a, b] = c.sides;
        adj[a.pants].push(b.pants);
        adj[b.pants].push(a.pants);
    }
    adj
}

fn distances(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for &q in &adj[p] {
            if dist[q] == usize::MAX {
                dist[q] = dist[p] + 1;
                queue.push_back(q);
            }
        }
    }
    dist
}

/// Member of `members` minimizing the largest graph distance to the others
/// (lowest index on ties).
fn tree_root(adj: &[Vec<usize>], members: &[usize]) -> usize {
    let eccentricity = |p: usize| distances(adj, p).into_iter().filter(|&d| d != usize::MAX).max().unwrap_or(0);
    members.iter().copied().min_by_key(|&p| eccentricity(p)).unwrap_or(0)
}

/// Build the holonomy representation of the surface group.
pub fn build_holonomy<T: Real>(
    decomp: &PantsDecomposition,
    coords: &FnCoordinates<T>,
) -> Result<HolonomyRepresentation<T>> {
    let cut = vec![false; decomp.num_curves()];
    let mut reps = build_components(decomp, coords, &cut)?;
    debug_assert_eq!(reps.len(), 1, "decomposition is connected");
    Ok(reps.swap_remove(0))
}

/// Holonomy of each component of the surface cut along the curves flagged
/// in `cut`, in the order of [`pants_components`].
///
/// A closed geodesic disjoint from the cut curves is represented by a word in
/// the generators of the component containing it.
pub fn build_subsurface_holonomy<T: Real>(
    decomp: &PantsDecomposition,
    coords: &FnCoordinates<T>,
    cut: &[bool],
) -> Result<Vec<HolonomyRepresentation<T>>> {
    if cut.len() != decomp.num_curves() {
        return Err(domain(
            "build_subsurface_holonomy",
            format!("{} cut flags for {} curves", cut.len(), decomp.num_curves()),
        ));
    }
    build_components(decomp, coords, cut)
}

fn build_components<T: Real>(
    decomp: &PantsDecomposition,
    coords: &FnCoordinates<T>,
    cut: &[bool],
) -> Result<Vec<HolonomyRepresentation<T>>> {
    const OP: &str = "build_holonomy";
    let curves = decomp.curves();
    if coords.len() != curves.len() {
        return Err(domain(OP, format!("{} coordinates for {} curves", coords.len(), curves.len())));
    }
    let lengths = coords.lengths();
    let mut slot_len = vec![[T::zero(); 3]; decomp.num_pants()];
    for (ci, c) in curves.iter().enumerate() {
        for s in c.sides {
            slot_len[s.pants][s.position as usize] = lengths[ci];
        }
    }
    let mut local = Vec::with_capacity(slot_len.len());
    let mut frames = Vec::with_capacity(slot_len.len());
    for lens in &slot_len {
        let x = pants_boundaries(*lens);
        let mut f = [Mat2::identity(); 3];
        for s in 0..3 {
            f[s] = boundary_frame(&x[s], &x[(s + 1) % 3])?;
        }
        local.push(x);
        frames.push(f);
    }
    let geometry = Geometry { decomp, coords, cut, local, frames, adj: adjacency(decomp, cut) };
    pants_components(decomp, cut).iter().map(|members| geometry.component(members)).collect()
}

struct Assembly<T> {
    generators: Vec<Mat2<T>>,
    /// Entrywise bounds `|A| |X| |B|` for generators computed as `A X B`.
    bounds: Vec<Mat2<T>>,
    kinds: Vec<GeneratorKind>,
    words: Vec<[Word; 3]>,
    conj: Vec<Option<Mat2<T>>>,
    tree_curves: Vec<bool>,
}

struct Geometry<'a, T> {
    decomp: &'a PantsDecomposition,
    coords: &'a FnCoordinates<T>,
    cut: &'a [bool],
    local: Vec<[Mat2<T>; 3]>,
    frames: Vec<[Mat2<T>; 3]>,
    adj: Vec<Vec<usize>>,
}

impl<T: Real> Geometry<'_, T> {
    fn twist(&self, ci: usize) -> T {
        let (l, t) = (self.coords.lengths()[ci], self.coords.twists()[ci]);
        if self.decomp.curves()[ci].marked {
            t + l / T::lit(2.0)
        } else {
            t
        }
    }

    fn frame(&self, s: Slot) -> Mat2<T> {
        self.frames[s.pants][s.position as usize]
    }

    /// Generators for the pants in `members`, with the root pants framed by
    /// `base`.
    fn assemble(&self, members: &[usize], base: Mat2<T>) -> Result<Assembly<T>> {
        let curves = self.decomp.curves();
        let n_pants = self.decomp.num_pants();
        let mut generators = Vec::new();
        let mut bounds = Vec::new();
        let mut kinds = Vec::new();
        let mut conj: Vec<Option<Mat2<T>>> = vec![None; n_pants];
        let mut words: Vec<[Word; 3]> = vec![Default::default(); n_pants];
        let mut tree_curves = vec![false; curves.len()];

        let root = tree_root(&self.adj, members);
        conj[root] = Some(base);
        let inv = base.inv();
        for position in 0..2 {
            let x = self.local[root][position];
            generators.push(base * x * inv);
            bounds.push(base.abs() * x.abs() * inv.abs());
            kinds.push(GeneratorKind::PantsBoundary { pants: root, position: position as u8 });
        }
        words[root] = [
            Word(vec![Letter::gen(0)]),
            Word(vec![Letter::gen(1)]),
            Word(vec![Letter::gen_inv(1), Letter::gen_inv(0)]),
        ];

        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(p) = queue.pop_front() {
            for (ci, c) in curves.iter().enumerate() {
                if self.cut[ci] {
                    continue;
                }
                for (here, there) in [(c.sides[0], c.sides[1]), (c.sides[1], c.sides[0])] {
                    if here.pants != p || conj[there.pants].is_some() {
                        continue;
                    }
                    let q = there.pants;
                    let gp = conj[p].expect("visited");
                    let gq = renormalize(gp * gluing(&self.frame(here), &self.frame(there), self.twist(ci)))?;
                    let s_in = there.position as usize;
                    let s_gen = (s_in + 1) % 3;
                    let s_last = (s_in + 2) % 3;
                    let g = generators.len();
                    let (x, gq_inv) = (self.local[q][s_gen], gq.inv());
                    generators.push(gq * x * gq_inv);
                    bounds.push(gq.abs() * x.abs() * gq_inv.abs());
                    kinds.push(GeneratorKind::PantsBoundary { pants: q, position: s_gen as u8 });
                    let parent = words[p][here.position as usize].clone();
                    let mut w: [Word; 3] = Default::default();
                    w[s_in] = parent.inverse();
                    w[s_gen] = Word(vec![Letter::gen(g)]);
                    w[s_last] = Word(vec![Letter::gen_inv(g)]).concat_reduced(&parent);
                    words[q] = w;
                    conj[q] = Some(gq);
                    tree_curves[ci] = true;
                    queue.push_back(q);
                }
            }
        }

        for (ci, c) in curves.iter().enumerate() {
            let [a, b] = c.sides;
            if tree_curves[ci] || self.cut[ci] || conj[a.pants].is_none() {
                continue;
            }
            let ga = conj[a.pants].expect("same component");
            let gb_inv = conj[b.pants].expect("same component").inv();
            let glue = gluing(&self.frame(a), &self.frame(b), self.twist(ci));
            generators.push(ga * glue * gb_inv);
            bounds.push(ga.abs() * glue.abs() * gb_inv.abs());
            kinds.push(GeneratorKind::StableLetter { curve: ci });
        }
        Ok(Assembly { generators, bounds, kinds, words, conj, tree_curves })
    }

    fn component(&self, members: &[usize]) -> Result<HolonomyRepresentation<T>> {
        const OP: &str = "build_holonomy";
        // A first pass locates a basepoint minimizing the total generator
        // size; the second rebuilds with that basepoint at `i`, so products
        // stay as small as the geometry allows.
        let rough = self.assemble(members, Mat2::identity())?;
        let base = balancing_frame(&rough.generators).inv();
        let Assembly { generators, bounds, kinds, words, conj, tree_curves } = self.assemble(members, base)?;
        let curves = self.decomp.curves();

        for (i, g) in generators.iter().enumerate() {
            if g.norm_sq() * T::epsilon() > T::lit(CONDITION_LIMIT) {
                return Err(Error::Numerical {
                    op: OP,
                    msg: format!(
                        "generator {i} has norm {} (ill-conditioned at this precision; the pants graph is too deep or the seams too long)",
                        g.norm()
                    ),
                });
            }
            let drift = (g.det() - T::one()).abs() / g.norm_sq().max(T::one());
            if !(drift <= T::tol(DET_TOLERANCE)) {
                return Err(Error::Numerical { op: OP, msg: format!("generator {i} has determinant drift {drift}") });
            }
        }
        let in_comp = |p: usize| conj[p].is_some();
        let inverses = generators.iter().map(Mat2::inv).collect();
        let side = |s: Slot| in_comp(s.pants).then(|| words[s.pants][s.position as usize].clone());
        let side_words: Vec<[Option<Word>; 2]> = curves.iter().map(|c| c.sides.map(side)).collect();
        let curve_words = side_words.iter().map(|[a, b]| a.clone().or_else(|| b.clone())).collect();

        let rep = HolonomyRepresentation {
            generators,
            inverses,
            bounds,
            kinds,
            pants: members.to_vec(),
            curve_words,
            side_words,
            curve_lengths: self.coords.lengths().to_vec(),
            tree_curves,
            cut_curves: self.cut.to_vec(),
        };
        let lengths = self.coords.lengths();
        for (i, sides) in rep.side_words.iter().enumerate() {
            for w in sides.iter().flatten() {
                let expected = T::lit(2.0) * (lengths[i] / T::lit(2.0)).cosh();
                let got = rep.trace(w)?.abs();
                let allowed = (T::tol(CURVE_TRACE_TOLERANCE) * expected).max(trace_error_bound(&rep, w.letters()));
                if !((got - expected).abs() <= allowed) {
                    return Err(Error::Numerical {
                        op: OP,
                        msg: format!(
                            "curve {i}: |trace| {got} differs from 2 cosh(l/2) = {expected} (representation too ill-conditioned)"
                        ),
                    });
                }
            }
        }
        Ok(rep)
    }
}

/// Upper estimate of half the length of the shortest compressible geodesic,
/// from the pants curves (all compressible in the filling).
pub fn rho_upper_estimate<T: Real>(coords: &FnCoordinates<T>) -> T {
    coords.lengths().iter().copied().fold(T::infinity(), T::min) / T::lit(2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pants_normal_form() {
        let l = [0.5f64, 0.9, 1.2];
        let x = pants_boundaries(l);
        for (m, len) in x.iter().zip(l) {
            assert!((m.det() - 1.0).abs() < 1e-13);
            assert!((m.trace().abs() - 2.0 * (len / 2.0).cosh()).abs() < 1e-12);
        }
        assert!((x[0] * x[1] * x[2]).max_abs_diff(&Mat2::identity()) < 1e-13);
        // Cyclic rotations also close up.
        assert!((x[1] * x[2] * x[0]).max_abs_diff(&Mat2::identity()) < 1e-13);
    }

    #[test]
    fn frames_put_pants_on_the_right() {
        for l in [[0.5f64, 0.9, 1.2], [0.01, 3.0, 0.2], [5.0, 5.0, 5.0]] {
            let x = pants_boundaries(l);
            for s in 0..3 {
                let f = boundary_frame(&x[s], &x[(s + 1) % 3]).unwrap();
                let n = f.inv() * x[s] * f;
                assert!(n.b.abs() < 1e-9 && n.c.abs() < 1e-9);
                assert!(n.a.abs() > n.d.abs());
                // The third boundary also lies on the right.
                let other = f.inv() * x[(s + 2) % 3] * f;
                let (big, small) = other.hyperbolic_eigenvalues().unwrap();
                for lam in [big, small] {
                    let (p, q) = other.eigenvector(lam);
                    assert!(p / q > 0.0, "{l:?} slot {s}");
                }
            }
        }
    }

    #[test]
    fn non_hyperbolic_trace_is_rejected() {
        assert!(matches!(trace_length(2.0f64), Err(Error::NonHyperbolic { .. })));
        assert!(matches!(trace_length(-2.0 - 1e-12f64), Err(Error::NonHyperbolic { .. })));
        assert!((trace_length(2.0 * 0.5f64.cosh()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn generator_count() {
        for g in 2..5 {
            let d = PantsDecomposition::chain(g).unwrap();
            let c = FnCoordinates::new(vec![1.0f64; 3 * g - 3], vec![0.0; 3 * g - 3]).unwrap();
            let rep = build_holonomy(&d, &c).unwrap();
            assert_eq!(rep.num_generators(), 3 * g - 1);
            for m in rep.generators() {
                assert!((m.det() - 1.0).abs() < 1e-10 * m.norm_sq().max(1.0));
            }
        }
    }

    #[test]
    fn deep_chain_reports_conditioning() {
        let g = 8;
        let d = PantsDecomposition::chain(g).unwrap();
        let c = FnCoordinates::new(vec![0.3f64; 3 * g - 3], vec![0.0; 3 * g - 3]).unwrap();
        assert!(matches!(build_holonomy(&d, &c), Err(Error::Numerical { .. })));
    }

    #[test]
    fn word_length_rejects_unreduced() {
        let d = PantsDecomposition::theta();
        let c = FnCoordinates::new(vec![1.0f64; 3], vec![0.0; 3]).unwrap();
        let rep = build_holonomy(&d, &c).unwrap();
        assert!(word_length(&rep, &Word::default()).is_err());
        assert!(word_length(&rep, &Word::parse("x0 X0").unwrap()).is_err());
        assert!(word_length(&rep, &Word::parse("x0 x1 X0").unwrap()).is_err());
    }
}
