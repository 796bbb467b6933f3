//! Planar unfoldings of face sequences and edge-path decompositions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cone::SignCone;
use super::cyclo::CycloInt;
use super::dodecahedron::Dodecahedron;
use crate::error::{Error, Result};

const TOL: f64 = 1e-9;

/// One pentagon of an unfolding. `vertices[j]` is where dodecahedron vertex
/// `labels[j]` lands; the vertices run counter-clockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlacedFace {
    pub face: usize,
    pub vertices: [CycloInt; 5],
    pub labels: [usize; 5],
}

impl PlacedFace {
    pub fn edge(&self, j: usize) -> CycloInt {
        self.vertices[(j + 1) % 5] - self.vertices[j]
    }

    fn embedded(&self) -> [(f64, f64); 5] {
        self.vertices.map(|v| v.embed())
    }

    /// Parameter interval of `p + t·d` inside the closed pentagon, widened by
    /// `TOL` in distance.
    fn clip(&self, p: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
        let pts = self.embedded();
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        for j in 0..5 {
            let a = pts[j];
            let b = pts[(j + 1) % 5];
            // inward unit normal of a counter-clockwise unit edge
            let n = (-(b.1 - a.1), b.0 - a.0);
            let num = n.0 * (p.0 - a.0) + n.1 * (p.1 - a.1) + TOL;
            let den = n.0 * d.0 + n.1 * d.1;
            if den.abs() < 1e-15 {
                if num < 0.0 {
                    return None;
                }
                continue;
            }
            let t = -num / den;
            if den > 0.0 {
                lo = lo.max(t);
            } else {
                hi = hi.min(t);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }
}

/// A chain of unit pentagons in which consecutive ones share an edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PentagonStrip {
    pub faces: Vec<PlacedFace>,
}

fn first_face(d: &Dodecahedron, face: usize) -> PlacedFace {
    let mut vertices = [CycloInt::ZERO; 5];
    for j in 1..5 {
        vertices[j] = vertices[j - 1] + CycloInt::zeta_pow(j as i64 - 1);
    }
    PlacedFace { face, vertices, labels: d.faces[face] }
}

/// Glue `next` onto `prev` across edge `i` of `prev`.
fn glue(d: &Dodecahedron, prev: &PlacedFace, i: usize, next: usize) -> PlacedFace {
    let a = prev.labels[i];
    let b = prev.labels[(i + 1) % 5];
    let f = &d.faces[next];
    let start = (0..5)
        .find(|&j| f[j] == b && f[(j + 1) % 5] == a)
        .expect("adjacent faces share the edge");
    let labels = std::array::from_fn(|j| f[(start + j) % 5]);
    let dir = -prev.edge(i);
    let mut vertices = [prev.vertices[(i + 1) % 5]; 5];
    for j in 1..5 {
        vertices[j] = vertices[j - 1] + dir.rotate(j as i64 - 1);
    }
    PlacedFace { face: next, vertices, labels }
}

/// Index `i` of the edge of `prev` that borders `next`.
fn shared_edge(d: &Dodecahedron, prev: &PlacedFace, next: usize) -> Option<usize> {
    (0..5).find(|&i| across(d, prev, i) == next)
}

fn across(d: &Dodecahedron, f: &PlacedFace, i: usize) -> usize {
    let p = d.faces[f.face].iter().position(|&v| v == f.labels[i]).expect("labels rotate the face");
    d.neighbors[f.face][p]
}

impl PentagonStrip {
    /// Unfold a path of faces. The first pentagon has vertex 0 at the origin
    /// and edge `j` along `ζ^j`.
    pub fn build(d: &Dodecahedron, path: &[usize]) -> Result<Self> {
        let Some(&head) = path.first() else {
            return Err(Error::precondition("face path is empty"));
        };
        if let Some(&bad) = path.iter().find(|&&f| f >= Dodecahedron::FACES) {
            return Err(Error::precondition(format!("face {bad} out of range 0..12")));
        }
        let mut faces = vec![first_face(d, head)];
        for w in path.windows(2) {
            let prev = faces.last().unwrap();
            let i = shared_edge(d, prev, w[1]).ok_or_else(|| {
                Error::precondition(format!("faces {} and {} are not adjacent", w[0], w[1]))
            })?;
            faces.push(glue(d, prev, i, w[1]));
        }
        Ok(PentagonStrip { faces })
    }

    /// Unfold along the ray leaving vertex 0 of `start_face` at `angle_deg`
    /// from its first edge, until `max_faces` pentagons are placed or the ray
    /// hits a vertex.
    pub fn trace(d: &Dodecahedron, start_face: usize, angle_deg: f64, max_faces: usize) -> Result<Self> {
        if start_face >= Dodecahedron::FACES {
            return Err(Error::precondition(format!("face {start_face} out of range 0..12")));
        }
        if !(angle_deg > 0.0 && angle_deg < 108.0) {
            return Err(Error::precondition("ray angle must lie in (0°, 108°)"));
        }
        if max_faces == 0 {
            return Err(Error::precondition("max_faces must be positive"));
        }
        let dir = (angle_deg.to_radians().cos(), angle_deg.to_radians().sin());
        let mut faces = vec![first_face(d, start_face)];
        while faces.len() < max_faces {
            let cur = faces.last().unwrap();
            let pts = cur.embedded();
            let mut exits: Vec<(f64, usize)> = (0..5)
                .filter_map(|j| {
                    let a = pts[j];
                    let b = pts[(j + 1) % 5];
                    let n = (-(b.1 - a.1), b.0 - a.0);
                    let den = n.0 * dir.0 + n.1 * dir.1;
                    (den < -1e-12).then(|| ((n.0 * a.0 + n.1 * a.1) / den, j))
                })
                .collect();
            exits.sort_by(|x, y| x.0.total_cmp(&y.0));
            match exits.as_slice() {
                [(t0, j), rest @ ..] if rest.first().map_or(true, |(t1, _)| t1 - t0 > 1e-9) => {
                    let placed = glue(d, cur, *j, across(d, cur, *j));
                    faces.push(placed);
                }
                _ => break,
            }
        }
        Ok(PentagonStrip { faces })
    }

    /// A traced strip with seeded start face, angle and length.
    pub fn random(d: &Dodecahedron, seed: u64, max_faces: usize) -> Result<Self> {
        if max_faces == 0 {
            return Err(Error::precondition("max_faces must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let face = rng.gen_range(0..Dodecahedron::FACES);
        let angle = rng.gen_range(1.0..107.0);
        let len = rng.gen_range(1..=max_faces);
        Self::trace(d, face, angle, len)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn face_path(&self) -> Vec<usize> {
        self.faces.iter().map(|f| f.face).collect()
    }

    /// Distinct vertex positions, sorted.
    pub fn vertices(&self) -> Vec<CycloInt> {
        let set: BTreeSet<CycloInt> = self.faces.iter().flat_map(|f| f.vertices).collect();
        set.into_iter().collect()
    }

    /// Indices of the pentagons met by the closed segment, or `None` when
    /// part of the segment lies outside every pentagon.
    pub fn crossed_faces(&self, start: CycloInt, end: CycloInt) -> Option<Vec<usize>> {
        let p = start.embed();
        let q = end.embed();
        let d = (q.0 - p.0, q.1 - p.1);
        let mut hits = Vec::new();
        let mut spans = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            if let Some((lo, hi)) = f.clip(p, d) {
                let (lo, hi) = (lo.max(0.0), hi.min(1.0));
                if lo <= hi {
                    hits.push(i);
                    spans.push((lo, hi));
                }
            }
        }
        spans.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut reach = 0.0f64;
        for (lo, hi) in spans {
            if lo > reach + TOL {
                break;
            }
            reach = reach.max(hi);
        }
        (reach >= 1.0 - TOL).then_some(hits)
    }

    /// Write `end − start` as a non-negative combination of the oriented
    /// basis of its cone by walking strip edges whose projection onto the
    /// segment increases.
    pub fn monotone_decompose(&self, start: CycloInt, end: CycloInt) -> Result<DecomposeOutcome> {
        let known = self.vertices();
        for p in [start, end] {
            if known.binary_search(&p).is_err() {
                return Err(Error::precondition(format!("{p} is not a vertex of the strip")));
            }
        }
        let v = end - start;
        let cone = SignCone::of(&v).ok_or_else(|| Error::precondition("start and end coincide"))?;
        let Some(crossed) = self.crossed_faces(start, end) else {
            return Ok(DecomposeOutcome::NotCrossing);
        };
        let basis = cone.oriented_basis();

        let mut graph: BTreeMap<CycloInt, BTreeSet<(usize, CycloInt)>> = BTreeMap::new();
        for &i in &crossed {
            let f = &self.faces[i];
            for j in 0..5 {
                let (a, b) = (f.vertices[j], f.vertices[(j + 1) % 5]);
                let e = b - a;
                let (from, to, step) = match v.dot2(&e).signum() {
                    1 => (a, b, e),
                    -1 => (b, a, -e),
                    _ => continue,
                };
                let k = basis.iter().position(|&fk| fk == step).expect("edge is a unit");
                graph.entry(from).or_default().insert((k, to));
            }
        }

        let mut prev: BTreeMap<CycloInt, (CycloInt, usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            if u == end {
                break;
            }
            for &(k, w) in graph.get(&u).into_iter().flatten() {
                if w != start && !prev.contains_key(&w) {
                    prev.insert(w, (u, k));
                    queue.push_back(w);
                }
            }
        }
        if !prev.contains_key(&end) {
            return Err(Error::NoMonotonePath { start: start.0, end: end.0 });
        }
        let mut coefficients = [0u64; 5];
        let mut path = vec![end];
        let mut at = end;
        while at != start {
            let (u, k) = prev[&at];
            coefficients[k] += 1;
            path.push(u);
            at = u;
        }
        path.reverse();
        Ok(DecomposeOutcome::Decomposed(Decomposition { cone, coefficients, path }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub cone: SignCone,
    pub coefficients: [u64; 5],
    pub path: Vec<CycloInt>,
}

impl Decomposition {
    /// `Σ n_k f_k` over the cone's oriented basis.
    pub fn recombine(&self) -> CycloInt {
        self.cone
            .oriented_basis()
            .iter()
            .zip(self.coefficients)
            .fold(CycloInt::ZERO, |s, (&f, n)| s + f.scale(n as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum DecomposeOutcome {
    Decomposed(Decomposition),
    NotCrossing,
}
