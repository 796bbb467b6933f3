//! Face adjacency of the regular dodecahedron.

use super::cyclo::PHI;

type P3 = [f64; 3];

fn dot(u: P3, w: P3) -> f64 {
    u[0] * w[0] + u[1] * w[1] + u[2] * w[2]
}

fn cross(u: P3, w: P3) -> P3 {
    [
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    ]
}

fn sub(u: P3, w: P3) -> P3 {
    [u[0] - w[0], u[1] - w[1], u[2] - w[2]]
}

/// Twelve pentagonal faces, each listed counter-clockwise as seen from
/// outside. `neighbors[f][i]` is the face across the edge from
/// `faces[f][i]` to `faces[f][i + 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Dodecahedron {
    pub vertices: Vec<P3>,
    pub faces: [[usize; 5]; 12],
    pub neighbors: [[usize; 5]; 12],
}

impl Default for Dodecahedron {
    fn default() -> Self {
        Self::new()
    }
}

impl Dodecahedron {
    pub const FACES: usize = 12;

    pub fn new() -> Self {
        let r = 1.0 / PHI;
        let signs = [1.0, -1.0];
        let mut vertices = Vec::with_capacity(20);
        for &a in &signs {
            for &b in &signs {
                for &c in &signs {
                    vertices.push([a, b, c]);
                }
            }
        }
        for &a in &signs {
            for &b in &signs {
                vertices.push([0.0, a * r, b * PHI]);
                vertices.push([a * r, b * PHI, 0.0]);
                vertices.push([a * PHI, 0.0, b * r]);
            }
        }

        let mut centers = Vec::with_capacity(12);
        for &a in &signs {
            for &b in &signs {
                centers.push([0.0, a * PHI, b]);
                centers.push([a, 0.0, b * PHI]);
                centers.push([a * PHI, b, 0.0]);
            }
        }

        let faces: [[usize; 5]; 12] = std::array::from_fn(|f| {
            let c = centers[f];
            let mut idx: Vec<usize> = (0..vertices.len()).collect();
            idx.sort_by(|&i, &j| dot(vertices[j], c).total_cmp(&dot(vertices[i], c)));
            idx.truncate(5);
            idx.sort();
            // local frame in the face plane, normal pointing outward
            let centroid = idx.iter().fold([0.0; 3], |s, &i| {
                let v = vertices[i];
                [s[0] + v[0] / 5.0, s[1] + v[1] / 5.0, s[2] + v[2] / 5.0]
            });
            let u = sub(vertices[idx[0]], centroid);
            let w = cross(c, u);
            let angle = |i: usize| {
                let d = sub(vertices[i], centroid);
                dot(d, w).atan2(dot(d, u)).rem_euclid(std::f64::consts::TAU)
            };
            idx.sort_by(|&i, &j| angle(i).total_cmp(&angle(j)));
            [idx[0], idx[1], idx[2], idx[3], idx[4]]
        });

        let neighbors = std::array::from_fn(|f| {
            std::array::from_fn(|i| {
                let (a, b) = (faces[f][i], faces[f][(i + 1) % 5]);
                (0..12)
                    .find(|&g| {
                        g != f && (0..5).any(|j| faces[g][j] == b && faces[g][(j + 1) % 5] == a)
                    })
                    .expect("closed surface")
            })
        });

        Dodecahedron { vertices, faces, neighbors }
    }

    pub fn are_adjacent(&self, f: usize, g: usize) -> bool {
        f < 12 && self.neighbors[f].contains(&g)
    }
}
