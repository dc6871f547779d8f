//! Translation surfaces presented by polygon gluings, their cotangent
//! charts, and the chart-local star product with its patching checks.
//!
//! # Polygon format
//!
//! A polygon is a list of edge vectors `e_0, .., e_{N-1}` (as complex
//! numbers) traversed counterclockwise starting at the origin, so vertex
//! `v_k = e_0 + .. + e_{k-1}` and corner `k` sits at `v_k`. Edges `i` and
//! `j` may be paired when `e_j = −e_i`: the two sides carry the same vector
//! but are traversed in opposite boundary orientation. Gluing identifies
//! `v_i + t e_i` with `v_{j+1} + t e_i`, a translation by `v_{j+1} − v_i`.
//!
//! # Charts
//!
//! Charts cover the complement of the cone points only:
//!
//! * chart 0 is the polygon interior, with the polygon's own coordinate;
//! * one lens-shaped chart per glued edge pair, around the open edge,
//!   using the coordinate of the side of the lower-numbered edge;
//! * one disc chart per vertex class with cone angle `2π` (a regular
//!   point), using the coordinate around its lowest-numbered corner.
//!
//! Every overlap component is recorded with the constant `c` such that
//! `ζ_to = ζ_from + c` there. The cotangent fiber coordinate `λ` (the
//! coefficient of `β`) is global, so transitions of cotangent charts are
//! `(ζ, λ) ↦ (ζ + c, λ)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moyal::StarProduct;
use crate::poisson::SymplecticForm;
use crate::poly::{affine_components, SparsePoly};
use crate::report::{CheckReport, Residual};
use crate::scalar::{parse_rational, ExactComplex};
use crate::series::HbarSeries;

/// Edge vectors of a polygon and the pairing of its sides.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonGluing {
    pub edges: Vec<ExactComplex>,
    pub pairing: Vec<(usize, usize)>,
}

impl PolygonGluing {
    pub fn new(edges: Vec<ExactComplex>, pairing: Vec<(usize, usize)>) -> Self {
        PolygonGluing { edges, pairing }
    }

    /// Parse `{"edges": [["re", "im"], ..], "pairing": [[i, j], ..]}`.
    /// Coordinates must be strings `"p"` or `"p/q"`.
    pub fn from_json(src: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(src)
            .map_err(|e| Error::InvalidSurface(format!("bad JSON: {e}")))?;
        let bad = |m: &str| Error::InvalidSurface(m.to_string());
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"edges\" array"))?
            .iter()
            .enumerate()
            .map(|(k, e)| {
                let pair = e
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad(&format!("edge {k} must be [re, im]")))?;
                let part = |x: &Value| -> Result<BigRational> {
                    match x {
                        Value::String(s) => parse_rational(s)
                            .map_err(|e| Error::InvalidSurface(format!("edge {k}: {e}"))),
                        other => Err(Error::InvalidSurface(format!(
                            "edge {k}: coordinate {other} must be an exact string \"p/q\""
                        ))),
                    }
                };
                Ok(ExactComplex::new(part(&pair[0])?, part(&pair[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        let pairing = v
            .get("pairing")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing \"pairing\" array"))?
            .iter()
            .map(|p| {
                let a = p
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("pairs must be [i, j]"))?;
                let idx = |x: &Value| {
                    x.as_u64()
                        .map(|n| n as usize)
                        .ok_or_else(|| bad("pair indices must be nonnegative integers"))
                };
                Ok((idx(&a[0])?, idx(&a[1])?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PolygonGluing { edges, pairing })
    }

    /// The file format read by [`PolygonGluing::from_json`].
    pub fn to_value(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| Value::from(vec![e.re.to_string(), e.im.to_string()]))
            .collect();
        let pairing: Vec<Value> = self
            .pairing
            .iter()
            .map(|&(a, b)| Value::from(vec![a, b]))
            .collect();
        serde_json::json!({ "edges": edges, "pairing": pairing })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("plain JSON")
    }

    /// The unit square with opposite sides glued (a flat torus).
    pub fn square() -> Self {
        Self::from_int_edges(&[(1, 0), (0, 1), (-1, 0), (0, -1)], &[(0, 2), (1, 3)])
    }

    /// A centrally symmetric rational octagon with opposite sides glued.
    /// Combinatorially the same as the regular octagon.
    pub fn octagon() -> Self {
        Self::from_int_edges(
            &[
                (2, 0),
                (1, 1),
                (0, 2),
                (-1, 1),
                (-2, 0),
                (-1, -1),
                (0, -2),
                (1, -1),
            ],
            &[(0, 4), (1, 5), (2, 6), (3, 7)],
        )
    }

    /// Three unit squares in an L, sides glued by vertical and horizontal
    /// translation.
    pub fn l_shape() -> Self {
        Self::from_int_edges(
            &[
                (1, 0),
                (1, 0),
                (0, 1),
                (-1, 0),
                (0, 1),
                (-1, 0),
                (0, -1),
                (0, -1),
            ],
            &[(0, 5), (1, 3), (2, 7), (4, 6)],
        )
    }

    /// A pentagon and its point reflection glued along one side, with the
    /// remaining parallel sides identified.
    pub fn double_pentagon() -> Self {
        Self::from_int_edges(
            &[
                (1, 2),
                (-2, 1),
                (-2, -1),
                (1, -2),
                (-1, -2),
                (2, -1),
                (2, 1),
                (-1, 2),
            ],
            &[(0, 4), (1, 5), (2, 6), (3, 7)],
        )
    }

    /// Built-in surface by name.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "square" | "torus" => Some(Self::square()),
            "octagon" => Some(Self::octagon()),
            "l-shape" | "lshape" => Some(Self::l_shape()),
            "double-pentagon" => Some(Self::double_pentagon()),
            _ => None,
        }
    }

    fn from_int_edges(edges: &[(i64, i64)], pairing: &[(usize, usize)]) -> Self {
        PolygonGluing {
            edges: edges
                .iter()
                .map(|&(x, y)| ExactComplex::gaussian(x, 1, y, 1))
                .collect(),
            pairing: pairing.to_vec(),
        }
    }
}

impl Serialize for PolygonGluing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_value().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChartKind {
    Polygon,
    /// Lens around the glued edge pair `(i, j)`, in the frame of side `i`.
    Edge {
        pair: (usize, usize),
    },
    /// Disc around a regular vertex class, in the frame of corner `corner`.
    Vertex {
        class: usize,
        corner: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub id: usize,
    #[serde(flatten)]
    pub kind: ChartKind,
}

/// One connected component of a chart overlap: `ζ_to = ζ_from + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Overlap {
    pub id: usize,
    pub from: usize,
    pub to: usize,
    pub shift: ExactComplex,
    pub region: String,
}

/// A triple intersection, given as three signed overlap legs whose shifts
/// must cancel (`c_ab + c_bc − c_ac = 0`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleOverlap {
    pub legs: [(usize, i8); 3],
    pub region: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub corners: Vec<usize>,
    /// Cone angle divided by `2π`.
    pub angle_turns: u32,
}

/// A zero of the abelian differential: a vertex class with cone angle
/// `2π(order + 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialZero {
    pub class: usize,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TranslationSurface {
    pub gluing: PolygonGluing,
    pub vertices: Vec<ExactComplex>,
    pub classes: Vec<VertexClass>,
    pub zeros: Vec<DifferentialZero>,
    pub genus: u32,
    pub charts: Vec<Chart>,
    pub overlaps: Vec<Overlap>,
    pub triples: Vec<TripleOverlap>,
}

impl TranslationSurface {
    pub fn zero_orders(&self) -> Vec<u32> {
        self.zeros.iter().map(|z| z.order).collect()
    }

    pub fn chart(&self, id: usize) -> Result<&Chart> {
        self.charts.get(id).ok_or(Error::UnknownChart(id))
    }

    pub fn overlap(&self, id: usize) -> Result<&Overlap> {
        self.overlaps.get(id).ok_or(Error::UnknownOverlap(id))
    }

    /// Overlap components between two charts, in either direction.
    pub fn overlaps_between(&self, a: usize, b: usize) -> Vec<&Overlap> {
        self.overlaps
            .iter()
            .filter(|o| (o.from == a && o.to == b) || (o.from == b && o.to == a))
            .collect()
    }

    /// `c_ab + c_bc − c_ac` for every triple overlap.
    pub fn cocycle_residuals(&self) -> Vec<ExactComplex> {
        self.triples
            .iter()
            .map(|t| {
                t.legs
                    .iter()
                    .fold(ExactComplex::zero(), |acc, &(id, sign)| {
                        let s = &self.overlaps[id].shift;
                        if sign > 0 {
                            &acc + s
                        } else {
                            &acc - s
                        }
                    })
            })
            .collect()
    }
}

impl fmt::Display for TranslationSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders = self.zero_orders();
        let listed: Vec<String> = orders.iter().map(|k| format!("order {k}")).collect();
        let sum: u32 = orders.iter().sum();
        write!(
            f,
            "genus {}, zeros [{}], sum {} = 2g-2",
            self.genus,
            listed.join(", "),
            sum
        )
    }
}

fn cross(a: &ExactComplex, b: &ExactComplex) -> BigRational {
    &a.re * &b.im - &a.im * &b.re
}

fn dot(a: &ExactComplex, b: &ExactComplex) -> BigRational {
    &a.re * &b.re + &a.im * &b.im
}

/// 0 when the counterclockwise angle from `a` to `x` lies in `[0, π)`,
/// 1 when it lies in `[π, 2π)`.
fn half(a: &ExactComplex, x: &ExactComplex) -> u8 {
    let c = cross(a, x);
    if c.is_positive() || (c.is_zero() && dot(a, x).is_positive()) {
        0
    } else {
        1
    }
}

/// Counterclockwise angle from `a` to `x` is at most the one to `y`.
fn angle_le(a: &ExactComplex, x: &ExactComplex, y: &ExactComplex) -> bool {
    let (hx, hy) = (half(a, x), half(a, y));
    if hx != hy {
        return hx < hy;
    }
    !cross(x, y).is_negative()
}

fn same_direction(a: &ExactComplex, x: &ExactComplex) -> bool {
    cross(a, x).is_zero() && dot(a, x).is_positive()
}

/// Whether the ray `d` lies in the half-open counterclockwise sector
/// `(start, end]`.
fn ray_in_sector(start: &ExactComplex, end: &ExactComplex, d: &ExactComplex) -> bool {
    !same_direction(start, d) && angle_le(start, d, end)
}

fn segments_intersect(
    p1: &ExactComplex,
    p2: &ExactComplex,
    q1: &ExactComplex,
    q2: &ExactComplex,
) -> bool {
    let orient = |a: &ExactComplex, b: &ExactComplex, c: &ExactComplex| {
        let v = cross(&(b - a), &(c - a));
        if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        }
    };
    let on_segment = |a: &ExactComplex, b: &ExactComplex, c: &ExactComplex| {
        let lo_re = a.re.clone().min(b.re.clone());
        let hi_re = a.re.clone().max(b.re.clone());
        let lo_im = a.im.clone().min(b.im.clone());
        let hi_im = a.im.clone().max(b.im.clone());
        c.re >= lo_re && c.re <= hi_re && c.im >= lo_im && c.im <= hi_im
    };
    let (o1, o2, o3, o4) = (
        orient(p1, p2, q1),
        orient(p1, p2, q2),
        orient(q1, q2, p1),
        orient(q1, q2, p2),
    );
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(p1, p2, q1))
        || (o2 == 0 && on_segment(p1, p2, q2))
        || (o3 == 0 && on_segment(q1, q2, p1))
        || (o4 == 0 && on_segment(q1, q2, p2))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Build the translation surface of a polygon gluing.
pub fn ingest_polygon(pg: &PolygonGluing) -> Result<TranslationSurface> {
    let n = pg.edges.len();
    let invalid = |m: String| Error::InvalidSurface(m);
    if n < 4 || !n.is_multiple_of(2) {
        return Err(invalid(format!(
            "need an even number of at least 4 edges, got {n}"
        )));
    }
    if let Some(k) = pg.edges.iter().position(ExactComplex::is_zero) {
        return Err(invalid(format!("edge {k} has zero length")));
    }

    // pairing must be a fixed-point-free involution on 0..n
    let mut partner = vec![usize::MAX; n];
    for &(a, b) in &pg.pairing {
        if a >= n || b >= n || a == b || partner[a] != usize::MAX || partner[b] != usize::MAX {
            return Err(invalid(format!(
                "pairing is not a fixed-point-free involution (pair [{a}, {b}])"
            )));
        }
        partner[a] = b;
        partner[b] = a;
    }
    if let Some(k) = partner.iter().position(|&p| p == usize::MAX) {
        return Err(invalid(format!(
            "pairing is not a fixed-point-free involution (edge {k} unmatched)"
        )));
    }

    let total = pg
        .edges
        .iter()
        .fold(ExactComplex::zero(), |acc, e| &acc + e);
    if !total.is_zero() {
        return Err(invalid(format!(
            "polygon does not close: edges sum to {total}"
        )));
    }
    for &(a, b) in &pg.pairing {
        if pg.edges[b] != -&pg.edges[a] {
            return Err(invalid(format!(
                "paired edges {a} and {b} are unequal: {} vs {} (side {b} must be the reverse of side {a})",
                pg.edges[a], pg.edges[b]
            )));
        }
    }

    let mut vertices = Vec::with_capacity(n);
    let mut v = ExactComplex::zero();
    for e in &pg.edges {
        vertices.push(v.clone());
        v = &v + e;
    }
    let area2 = (0..n).fold(BigRational::zero(), |acc, k| {
        acc + cross(&vertices[k], &vertices[(k + 1) % n])
    });
    if !area2.is_positive() {
        return Err(invalid("polygon must be traversed counterclockwise".into()));
    }
    for a in 0..n {
        for b in a + 1..n {
            if b == a + 1 || (a == 0 && b == n - 1) {
                continue;
            }
            if segments_intersect(
                &vertices[a],
                &vertices[(a + 1) % n],
                &vertices[b],
                &vertices[(b + 1) % n],
            ) {
                return Err(invalid(format!(
                    "polygon is not simple: edges {a} and {b} meet"
                )));
            }
        }
    }

    let mut uf = UnionFind((0..n).collect());
    for &(i, j) in &pg.pairing {
        uf.union(i, (j + 1) % n);
        uf.union((i + 1) % n, j);
    }
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<VertexClass> = Vec::new();
    for k in 0..n {
        let root = uf.find(k);
        if class_of[root] == usize::MAX {
            class_of[root] = classes.len();
            classes.push(VertexClass {
                corners: Vec::new(),
                angle_turns: 0,
            });
        }
        let c = class_of[root];
        class_of[k] = c;
        classes[c].corners.push(k);
    }

    // cone angle / 2π: count crossings of a fixed ray through the corner
    // sectors (from e_k counterclockwise to −e_{k−1}); two rays must agree
    let rays = [ExactComplex::one(), ExactComplex::i()];
    for (ci, class) in classes.iter_mut().enumerate() {
        let counts: Vec<u32> = rays
            .iter()
            .map(|d| {
                class
                    .corners
                    .iter()
                    .filter(|&&k| {
                        let start = &pg.edges[k];
                        let end = -&pg.edges[(k + n - 1) % n];
                        ray_in_sector(start, &end, d)
                    })
                    .count() as u32
            })
            .collect();
        if counts[0] != counts[1] || counts[0] == 0 {
            return Err(invalid(format!(
                "cone angle at vertex class {ci} is not a positive multiple of 2π"
            )));
        }
        class.angle_turns = counts[0];
    }

    let vcount = classes.len() as i64;
    let euler = vcount - (n as i64) / 2 + 1;
    if euler > 0 || euler % 2 != 0 {
        return Err(invalid(format!(
            "Euler characteristic {euler} does not give a genus g >= 1"
        )));
    }
    let genus = ((2 - euler) / 2) as u32;
    let zeros: Vec<DifferentialZero> = classes
        .iter()
        .enumerate()
        .filter(|(_, c)| c.angle_turns > 1)
        .map(|(k, c)| DifferentialZero {
            class: k,
            order: c.angle_turns - 1,
        })
        .collect();
    let sum: u32 = zeros.iter().map(|z| z.order).sum();
    if sum + 2 != 2 * genus {
        return Err(invalid(format!(
            "zero orders sum to {sum} but 2g-2 = {} (inconsistent gluing)",
            2 * genus - 2
        )));
    }

    let (charts, overlaps, triples) = build_atlas(pg, &vertices, &classes, &class_of);
    Ok(TranslationSurface {
        gluing: pg.clone(),
        vertices,
        classes,
        zeros,
        genus,
        charts,
        overlaps,
        triples,
    })
}

fn build_atlas(
    pg: &PolygonGluing,
    vertices: &[ExactComplex],
    classes: &[VertexClass],
    class_of: &[usize],
) -> (Vec<Chart>, Vec<Overlap>, Vec<TripleOverlap>) {
    let n = vertices.len();
    let mut charts = vec![Chart {
        id: 0,
        kind: ChartKind::Polygon,
    }];
    let mut overlaps: Vec<Overlap> = Vec::new();
    let mut triples = Vec::new();
    let push = |overlaps: &mut Vec<Overlap>, from, to, shift, region: String| {
        let id = overlaps.len();
        overlaps.push(Overlap {
            id,
            from,
            to,
            shift,
            region,
        });
        id
    };

    // vertex discs around regular points; polygon -> disc near each corner
    let mut vertex_chart = vec![None; classes.len()];
    let mut corner_overlap = vec![usize::MAX; n];
    for (ci, class) in classes.iter().enumerate() {
        if class.angle_turns != 1 {
            continue;
        }
        let rep = class.corners[0];
        let id = charts.len();
        charts.push(Chart {
            id,
            kind: ChartKind::Vertex {
                class: ci,
                corner: rep,
            },
        });
        vertex_chart[ci] = Some(id);
        for &k in &class.corners {
            corner_overlap[k] = push(
                &mut overlaps,
                0,
                id,
                &vertices[rep] - &vertices[k],
                format!("corner {k}"),
            );
        }
    }

    let mut pairs: Vec<(usize, usize)> = pg
        .pairing
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort();
    for (i, j) in pairs {
        let id = charts.len();
        charts.push(Chart {
            id,
            kind: ChartKind::Edge { pair: (i, j) },
        });
        let side_i = push(
            &mut overlaps,
            id,
            0,
            ExactComplex::zero(),
            format!("side {i}"),
        );
        let glue = &vertices[(j + 1) % n] - &vertices[i];
        let side_j = push(&mut overlaps, id, 0, glue, format!("side {j}"));

        // endpoints of side i: v_i ~ v_{j+1} and v_{i+1} ~ v_j
        for (end, far) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
            let Some(vc) = vertex_chart[class_of[end]] else {
                continue;
            };
            let rep = classes[class_of[end]].corners[0];
            let ev = push(
                &mut overlaps,
                id,
                vc,
                &vertices[rep] - &vertices[end],
                format!("side {i} near corner {end}"),
            );
            // (P→E) + (E→V) − (P→V), with P→E the reverse of the E→P leg
            triples.push(TripleOverlap {
                legs: [(side_i, -1), (ev, 1), (corner_overlap[end], -1)],
                region: format!("corner {end}, side {i}"),
            });
            triples.push(TripleOverlap {
                legs: [(side_j, -1), (ev, 1), (corner_overlap[far], -1)],
                region: format!("corner {far}, side {j}"),
            });
        }
    }
    (charts, overlaps, triples)
}

/// An affine map `x ↦ A x + b` of `C^{2}` (or any dimension).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AffineMap {
    pub linear: Matrix,
    pub shift: Vec<ExactComplex>,
}

impl AffineMap {
    pub fn new(linear: Matrix, shift: Vec<ExactComplex>) -> Result<Self> {
        if !linear.is_square() || linear.rows() != shift.len() {
            return Err(Error::DimensionMismatch("affine map shape".into()));
        }
        Ok(AffineMap { linear, shift })
    }

    pub fn identity(dim: usize) -> Self {
        AffineMap {
            linear: Matrix::identity(dim),
            shift: vec![ExactComplex::zero(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    /// The pullback `f ∘ self`.
    pub fn pullback(&self, f: &SparsePoly) -> Result<SparsePoly> {
        f.affine_subst(&self.linear, &self.shift)
    }

    pub fn pullback_series(&self, f: &HbarSeries) -> Result<HbarSeries> {
        f.try_map(|c| self.pullback(c))
    }

    pub fn inverse(&self) -> Result<AffineMap> {
        let inv = self.linear.inverse()?;
        let shift = inv.mul_vec(&self.shift)?.into_iter().map(|x| -x).collect();
        Ok(AffineMap { linear: inv, shift })
    }

    pub fn apply(&self, point: &[ExactComplex]) -> Result<Vec<ExactComplex>> {
        let lin = self.linear.mul_vec(point)?;
        Ok(lin.iter().zip(&self.shift).map(|(a, b)| a + b).collect())
    }

    /// Components as polynomials, e.g. `[z1 + c, z2]`.
    pub fn components(&self) -> Vec<SparsePoly> {
        affine_components(&self.linear, &self.shift)
    }
}

/// Cotangent lift of the translation `ζ ↦ ζ + c`: `(ζ, λ) ↦ (ζ + c, λ)`.
pub fn cotangent_transition(c: &ExactComplex) -> AffineMap {
    AffineMap {
        linear: Matrix::identity(2),
        shift: vec![c.clone(), ExactComplex::zero()],
    }
}

/// `Jᵀ ω₀ J − ω₀` for an affine coordinate change of a cotangent chart.
pub fn liouville_residual(map: &AffineMap) -> Result<Matrix> {
    let w = SymplecticForm::omega0();
    let j = &map.linear;
    j.transpose().mul(w.matrix())?.mul(j)?.sub(w.matrix())
}

/// Check that every cotangent transition pulls `ω₀ = dλ∧dζ` back to itself.
pub fn liouville_pullback_check(surface: &TranslationSurface) -> Result<CheckReport> {
    let maps: Vec<(String, AffineMap)> = surface
        .overlaps
        .iter()
        .map(|o| {
            (
                format!("overlap {} ({} -> {})", o.id, o.from, o.to),
                cotangent_transition(&o.shift),
            )
        })
        .collect();
    liouville_pullback_check_maps(&maps)
}

pub fn liouville_pullback_check_maps(maps: &[(String, AffineMap)]) -> Result<CheckReport> {
    let mut report = CheckReport::new("Liouville form preserved by cotangent transitions", None);
    for (label, map) in maps {
        let r = liouville_residual(map)?;
        report.record("liouville-pullback", Residual::Matrix(r), || label.clone());
    }
    if maps.is_empty() {
        report.entry("liouville-pullback");
    }
    Ok(report)
}

/// Cocycle condition on all triple overlaps.
pub fn cocycle_check(surface: &TranslationSurface) -> CheckReport {
    let mut report = CheckReport::new("translation cocycle", None);
    let entry = report.entry("cocycle");
    for (t, r) in surface.triples.iter().zip(surface.cocycle_residuals()) {
        entry.record(Residual::Poly(SparsePoly::constant(1, r)), || {
            t.region.clone()
        });
    }
    report
}

/// Star product of `f, g` in the cotangent chart `chart` (coordinates
/// `ζ = z1`, `λ = z2`): the Moyal product of `(C^2, ω₀)`.
pub fn chart_star(
    surface: &TranslationSurface,
    chart: usize,
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> Result<HbarSeries> {
    surface.chart(chart)?;
    StarProduct::from_form(&SymplecticForm::omega0(), order)?.star(f, g)
}

/// Compare `f ⋆ g` computed in chart `from` of `overlap` with the product
/// computed in chart `to` and carried back.
pub fn overlap_agreement_check(
    surface: &TranslationSurface,
    overlap: usize,
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> Result<Residual> {
    let o = surface.overlap(overlap)?;
    let forward = cotangent_transition(&o.shift);
    overlap_agreement_check_with(surface, overlap, &forward, f, g, order)
}

/// As [`overlap_agreement_check`], but the functions are moved into the
/// target chart with `forward` instead of the recorded transition. The
/// product is always carried back with the cotangent lift of the recorded
/// translation, so a `forward` that is not that lift shows up as a
/// nonzero residual.
pub fn overlap_agreement_check_with(
    surface: &TranslationSurface,
    overlap: usize,
    forward: &AffineMap,
    f: &SparsePoly,
    g: &SparsePoly,
    order: usize,
) -> Result<Residual> {
    let o = surface.overlap(overlap)?;
    let here = chart_star(surface, o.from, f, g, order)?;
    let back = forward.inverse()?;
    let f_there = back.pullback(f)?;
    let g_there = back.pullback(g)?;
    let there = chart_star(surface, o.to, &f_there, &g_there, order)?;
    let returned = cotangent_transition(&o.shift).pullback_series(&there)?;
    Ok(Residual::Series(here.try_sub(&returned)?))
}

/// Run the patching check over every overlap and pair, together with the
/// cocycle and Liouville checks.
pub fn patch_check(
    surface: &TranslationSurface,
    pairs: &[(SparsePoly, SparsePoly)],
    order: usize,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("chart star products patch together", Some(order));
    for o in &surface.overlaps {
        for (f, g) in pairs {
            let r = overlap_agreement_check(surface, o.id, f, g, order)?;
            report.record("overlap-agreement", r, || {
                format!(
                    "overlap {} ({} -> {}, c = {}): f = {f}, g = {g}",
                    o.id, o.from, o.to, o.shift
                )
            });
        }
    }
    report.outcomes.extend(cocycle_check(surface).outcomes);
    report
        .outcomes
        .extend(liouville_pullback_check(surface)?.outcomes);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{parse_poly, parse_series};

    fn p(s: &str) -> SparsePoly {
        parse_poly(s, 2).unwrap()
    }

    #[test]
    fn square_torus() {
        let s = ingest_polygon(&PolygonGluing::square()).unwrap();
        assert_eq!(s.genus, 1);
        assert!(s.zeros.is_empty());
        assert_eq!(s.classes.len(), 1);
        assert_eq!(s.to_string(), "genus 1, zeros [], sum 0 = 2g-2");
        // polygon, one vertex disc, two edge lenses
        assert_eq!(s.charts.len(), 4);
        assert!(s.cocycle_residuals().iter().all(ExactComplex::is_zero));
        assert!(!s.triples.is_empty());
    }

    #[test]
    fn octagon_genus_two() {
        let s = ingest_polygon(&PolygonGluing::octagon()).unwrap();
        assert_eq!(s.genus, 2);
        assert_eq!(s.zero_orders(), vec![2]);
        assert_eq!(s.classes[0].angle_turns, 3);
        assert_eq!(s.to_string(), "genus 2, zeros [order 2], sum 2 = 2g-2");
        // the cone point is excluded: no vertex chart
        assert!(s
            .charts
            .iter()
            .all(|c| !matches!(c.kind, ChartKind::Vertex { .. })));
    }

    #[test]
    fn other_builtins() {
        for pg in [PolygonGluing::l_shape(), PolygonGluing::double_pentagon()] {
            let s = ingest_polygon(&pg).unwrap();
            assert_eq!(s.genus, 2);
            assert_eq!(s.zero_orders(), vec![2]);
        }
    }

    #[test]
    fn malformed_gluings() {
        let tri = PolygonGluing::new(
            vec![
                ExactComplex::gaussian(1, 1, 0, 1),
                ExactComplex::gaussian(-1, 1, 1, 1),
                ExactComplex::gaussian(0, 1, -1, 1),
                ExactComplex::zero(),
            ],
            vec![(0, 1)],
        );
        assert!(ingest_polygon(&tri).is_err());
        let mut unmatched = PolygonGluing::square();
        unmatched.pairing = vec![(0, 2)];
        let err = ingest_polygon(&unmatched).unwrap_err().to_string();
        assert!(err.contains("involution"), "{err}");
        let mut open = PolygonGluing::square();
        open.edges[0] = ExactComplex::from_int(2);
        assert!(ingest_polygon(&open)
            .unwrap_err()
            .to_string()
            .contains("does not close"));
        let mut twisted = PolygonGluing::square();
        twisted.pairing = vec![(0, 1), (2, 3)];
        assert!(ingest_polygon(&twisted)
            .unwrap_err()
            .to_string()
            .contains("unequal"));
        let cw = PolygonGluing::new(
            PolygonGluing::square()
                .edges
                .iter()
                .rev()
                .cloned()
                .collect(),
            vec![(0, 2), (1, 3)],
        );
        assert!(ingest_polygon(&cw)
            .unwrap_err()
            .to_string()
            .contains("counterclockwise"));
    }

    #[test]
    fn json_roundtrip_and_float_rejection() {
        let pg = PolygonGluing::octagon();
        assert_eq!(PolygonGluing::from_json(&pg.to_json()).unwrap(), pg);
        let err =
            PolygonGluing::from_json(r#"{"edges": [["0.5", "0"]], "pairing": []}"#).unwrap_err();
        assert!(err.to_string().contains("p/q"), "{err}");
        let err = PolygonGluing::from_json(r#"{"edges": [[1, 0]], "pairing": []}"#).unwrap_err();
        assert!(err.to_string().contains("exact string"), "{err}");
    }

    #[test]
    fn transition_examples() {
        assert_eq!(
            cotangent_transition(&ExactComplex::zero()),
            AffineMap::identity(2)
        );
        let t = cotangent_transition(&ExactComplex::gaussian(1, 1, 1, 1));
        assert_eq!(t.pullback(&p("z1*z2")).unwrap(), p("(z1 + 1 + i)*z2"));
        assert!(liouville_residual(&t).unwrap().is_zero());
    }

    #[test]
    fn liouville_checks() {
        for pg in [PolygonGluing::square(), PolygonGluing::octagon()] {
            let s = ingest_polygon(&pg).unwrap();
            assert!(liouville_pullback_check(&s).unwrap().passed());
        }
        let stretched = AffineMap::new(
            Matrix::diagonal(&[ExactComplex::one(), ExactComplex::from_int(2)]),
            vec![ExactComplex::zero(); 2],
        )
        .unwrap();
        let r = liouville_residual(&stretched).unwrap();
        assert_eq!(r, SymplecticForm::omega0().matrix().clone());
        let report = liouville_pullback_check_maps(&[("corrupt".into(), stretched)]).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn chart_star_examples() {
        let s = ingest_polygon(&PolygonGluing::square()).unwrap();
        let f = p("z1^2 + z2");
        assert_eq!(
            chart_star(&s, 0, &SparsePoly::one(2), &f, 4).unwrap(),
            HbarSeries::from_poly(f, 4)
        );
        assert_eq!(
            chart_star(&s, 1, &p("ζ"), &p("λ"), 4).unwrap(),
            parse_series("z1*z2 - 1/2*i*h", 2, 4).unwrap()
        );
        assert_eq!(
            chart_star(&s, 0, &p("λ"), &p("λ"), 4).unwrap(),
            HbarSeries::from_poly(p("z2^2"), 4)
        );
        assert_eq!(
            chart_star(&s, 99, &p("z1"), &p("z2"), 4),
            Err(Error::UnknownChart(99))
        );
    }

    #[test]
    fn overlap_examples() {
        let s = ingest_polygon(&PolygonGluing::octagon()).unwrap();
        let nonzero = s.overlaps.iter().find(|o| !o.shift.is_zero()).unwrap();
        let zero = s.overlaps.iter().find(|o| o.shift.is_zero()).unwrap();
        for o in [nonzero, zero] {
            assert!(overlap_agreement_check(&s, o.id, &p("ζ"), &p("λ"), 6)
                .unwrap()
                .is_zero());
        }
        let c = nonzero.shift.clone();
        let corrupt = AffineMap::new(Matrix::identity(2), vec![c.clone(), c]).unwrap();
        let r =
            overlap_agreement_check_with(&s, nonzero.id, &corrupt, &p("ζ"), &p("λ"), 6).unwrap();
        assert!(!r.is_zero());
        assert_eq!(
            overlap_agreement_check(&s, 999, &p("z1"), &p("z2"), 2),
            Err(Error::UnknownOverlap(999))
        );
    }
}
