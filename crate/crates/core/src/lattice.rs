//! Lattice boxes with a wired exterior, and the numerical constants that
//! describe their large-scale behaviour: the periodic `ℓ*`, the grid ratio
//! law, the mean-resistance limit `R*`, the cuboid exit-time constant
//! `C(D)`, and the rescaled Green's function of the unit square.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Dart, Edge, VertexId, WeightedGraph};
use crate::planar::{rotation_by_angle, PlanarMap};
use crate::sampler::{map_forests, mean_and_stderr, worker_rng, SamplerConfig};
use crate::stats::ForestModel;

/// Built-in periodic lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeFamily {
    /// `Z^d` with nearest-neighbour edges.
    Cubic(usize),
    Square,
    Triangular,
    Hexagonal,
}

impl LatticeFamily {
    /// `(vertices, edges)` per fundamental domain.
    pub fn fundamental_domain(&self) -> (usize, usize) {
        match *self {
            LatticeFamily::Cubic(d) => (1, d),
            LatticeFamily::Square => (1, 2),
            LatticeFamily::Triangular => (1, 3),
            LatticeFamily::Hexagonal => (2, 3),
        }
    }

    pub fn degree(&self) -> usize {
        match *self {
            LatticeFamily::Cubic(d) => 2 * d,
            LatticeFamily::Square => 4,
            LatticeFamily::Triangular => 6,
            LatticeFamily::Hexagonal => 3,
        }
    }

    pub fn is_planar(&self) -> bool {
        !matches!(self, LatticeFamily::Cubic(d) if *d != 2)
    }
}

impl fmt::Display for LatticeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeFamily::Cubic(d) => f.pad(&format!("cubic{d}")),
            LatticeFamily::Square => f.pad("square"),
            LatticeFamily::Triangular => f.pad("triangular"),
            LatticeFamily::Hexagonal => f.pad("hexagonal"),
        }
    }
}

impl FromStr for LatticeFamily {
    type Err = Error;

    /// Accepts `square`, `triangular`, `hexagonal`, `cubic` (d = 3) and
    /// `cubic<d>` / `cubic:<d>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "square" => Ok(LatticeFamily::Square),
            "triangular" | "tri" => Ok(LatticeFamily::Triangular),
            "hexagonal" | "hex" | "honeycomb" => Ok(LatticeFamily::Hexagonal),
            "cubic" => Ok(LatticeFamily::Cubic(3)),
            _ => s
                .strip_prefix("cubic")
                .map(|rest| rest.trim_start_matches(':'))
                .and_then(|d| d.parse::<usize>().ok())
                .filter(|&d| d >= 1)
                .map(LatticeFamily::Cubic)
                .ok_or(Error::UnsupportedFamily(s)),
        }
    }
}

/// A family and a box size. Size `n` keeps the lattice points strictly
/// inside `(-n, n)^d` (side `2n − 1`; for triangular and hexagonal, a
/// rhombus of `(2n − 1)²` fundamental domains) and wires everything else
/// into the boundary vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSpec {
    pub family: LatticeFamily,
    pub n: usize,
}

impl LatticeSpec {
    pub fn new(family: LatticeFamily, n: usize) -> Self {
        LatticeSpec { family, n }
    }

    pub fn side(&self) -> usize {
        2 * self.n - 1
    }
}

/// A generated lattice box. The boundary vertex is the last vertex.
#[derive(Clone, Debug)]
pub struct Lattice {
    pub graph: WeightedGraph,
    /// Rotation system for planar families; its outer face is the first
    /// face around the wired vertex.
    pub map: Option<PlanarMap>,
    /// Coordinates of the non-boundary vertices.
    pub positions: Vec<Vec<f64>>,
}

/// Builds the wired box described by `spec`.
pub fn build_lattice(spec: &LatticeSpec) -> Result<Lattice> {
    if spec.n < 2 {
        return Err(Error::InvalidArgument(format!(
            "lattice size must be at least 2, got {}",
            spec.n
        )));
    }
    let m = spec.side();
    match spec.family {
        LatticeFamily::Cubic(0) => Err(Error::UnsupportedFamily("cubic0".into())),
        LatticeFamily::Cubic(d) => wired_box(d, m),
        LatticeFamily::Square => wired_box(2, m),
        LatticeFamily::Triangular => wired_patch(&triangular_cells(m)),
        LatticeFamily::Hexagonal => wired_patch(&hexagonal_cells(m)),
    }
}

/// Vertices, edges and exterior stubs of a lattice patch before wiring.
struct Patch {
    positions: Vec<Vec<f64>>,
    edges: Vec<(VertexId, VertexId)>,
    /// `(v, position of the missing neighbour)`
    stubs: Vec<(VertexId, Vec<f64>)>,
}

/// Connects every stub to a new boundary vertex and, in two dimensions,
/// derives a rotation system from coordinates.
fn wired_patch(p: &Patch) -> Result<Lattice> {
    let b = p.positions.len();
    let mut edges: Vec<Edge> = p.edges.iter().map(|&(u, v)| Edge::new(u, v, 1.0)).collect();
    let first_stub = edges.len();
    edges.extend(p.stubs.iter().map(|(v, _)| Edge::new(*v, b, 1.0)));
    let graph = WeightedGraph::new(b + 1, edges, b)?;
    let planar = p.positions.first().is_some_and(|x| x.len() == 2);
    let map = if planar {
        let dim = p.positions.len() as f64;
        let centre = p.positions.iter().fold([0.0, 0.0], |c, x| [c[0] + x[0] / dim, c[1] + x[1] / dim]);
        let angle = |d: Dart| {
            if d.edge >= first_stub {
                let (v, out) = &p.stubs[d.edge - first_stub];
                let x = &p.positions[*v];
                if d.tail(&graph) == b {
                    // Seen from the wired vertex the plane is mirrored.
                    let mid = [(x[0] + out[0]) / 2.0 - centre[0], (x[1] + out[1]) / 2.0 - centre[1]];
                    -mid[1].atan2(mid[0])
                } else {
                    (out[1] - x[1]).atan2(out[0] - x[0])
                }
            } else {
                let (s, t) = (&p.positions[d.tail(&graph)], &p.positions[d.head(&graph)]);
                (t[1] - s[1]).atan2(t[0] - s[0])
            }
        };
        let rotation = rotation_by_angle(&graph, angle);
        let outer = rotation[b][0];
        Some(PlanarMap::new(graph.clone(), rotation, outer)?)
    } else {
        None
    };
    Ok(Lattice {
        graph,
        map,
        positions: p.positions.clone(),
    })
}

/// `Z^d ∩ [0, side)^d` with all exterior neighbours wired to one vertex.
pub fn wired_box(d: usize, side: usize) -> Result<Lattice> {
    if d == 0 || side == 0 {
        return Err(Error::InvalidArgument("box needs d ≥ 1 and side ≥ 1".into()));
    }
    wired_patch(&cubic_cells(d, side))
}

fn cubic_cells(d: usize, side: usize) -> Patch {
    let count = side.pow(d as u32);
    let coords = |mut i: usize| -> Vec<i64> {
        let mut c = vec![0; d];
        for k in (0..d).rev() {
            c[k] = (i % side) as i64;
            i /= side;
        }
        c
    };
    let mut positions = Vec::with_capacity(count);
    let mut edges = Vec::new();
    let mut stubs = Vec::new();
    let stride = |k: usize| side.pow((d - 1 - k) as u32);
    for v in 0..count {
        let c = coords(v);
        positions.push(c.iter().map(|&x| x as f64).collect::<Vec<_>>());
        for k in 0..d {
            if c[k] + 1 < side as i64 {
                edges.push((v, v + stride(k)));
            }
            for step in [-1i64, 1] {
                let y = c[k] + step;
                if y < 0 || y >= side as i64 {
                    let mut out: Vec<f64> = c.iter().map(|&x| x as f64).collect();
                    out[k] = y as f64;
                    stubs.push((v, out));
                }
            }
        }
    }
    Patch {
        positions,
        edges,
        stubs,
    }
}

fn rhombic_patch(
    m: usize,
    kinds: usize,
    position: impl Fn(usize, i64, i64) -> Vec<f64>,
    neighbours: impl Fn(usize) -> Vec<(i64, i64, usize)>,
) -> Patch {
    let index = |k: usize, i: i64, j: i64| -> Option<usize> {
        (i >= 0 && j >= 0 && i < m as i64 && j < m as i64)
            .then(|| (i as usize * m + j as usize) * kinds + k)
    };
    let mut positions = Vec::new();
    let mut edges = Vec::new();
    let mut stubs = Vec::new();
    for i in 0..m as i64 {
        for j in 0..m as i64 {
            for k in 0..kinds {
                let v = index(k, i, j).unwrap();
                positions.push(position(k, i, j));
                for (di, dj, k2) in neighbours(k) {
                    match index(k2, i + di, j + dj) {
                        Some(w) if w > v => edges.push((v, w)),
                        Some(_) => {}
                        None => stubs.push((v, position(k2, i + di, j + dj))),
                    }
                }
            }
        }
    }
    Patch {
        positions,
        edges,
        stubs,
    }
}

fn triangular_cells(m: usize) -> Patch {
    let s = 3f64.sqrt() / 2.0;
    rhombic_patch(
        m,
        1,
        |_, i, j| vec![i as f64 + j as f64 / 2.0, j as f64 * s],
        |_| vec![(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (1, -1, 0), (-1, 1, 0)],
    )
}

/// Honeycomb: `A(i,j)` at `i·a₁ + j·a₂`, `B(i,j)` one unit above it, with
/// `a₁ = (√3, 0)` and `a₂ = (√3/2, 3/2)`.
fn hexagonal_cells(m: usize) -> Patch {
    let r = 3f64.sqrt();
    rhombic_patch(
        m,
        2,
        |k, i, j| {
            let (x, y) = (i as f64 * r + j as f64 * r / 2.0, j as f64 * 1.5);
            vec![x, y + k as f64]
        },
        |k| match k {
            0 => vec![(0, 0, 1), (0, -1, 1), (1, -1, 1)],
            _ => vec![(0, 0, 0), (0, 1, 0), (-1, 1, 0)],
        },
    )
}

/// An unwired patch as a plane map (the outer face is the unbounded one).
/// Boundary vertex 0; sizes count vertices per side for square and
/// triangular, fundamental domains per side for hexagonal. Hexagonal
/// patches have pendant corner vertices, hence bridges.
pub fn free_patch(family: LatticeFamily, m: usize) -> Result<PlanarMap> {
    if m < 2 {
        return Err(Error::InvalidArgument("patch needs at least 2 per side".into()));
    }
    let p = match family {
        LatticeFamily::Square | LatticeFamily::Cubic(2) => cubic_cells(2, m),
        LatticeFamily::Triangular => triangular_cells(m),
        LatticeFamily::Hexagonal => hexagonal_cells(m),
        other => return Err(Error::UnsupportedFamily(other.to_string())),
    };
    let edges = p.edges.iter().map(|&(u, v)| Edge::new(u, v, 1.0));
    let graph = WeightedGraph::new(p.positions.len(), edges, 0)?;
    let pos: Vec<(f64, f64)> = p.positions.iter().map(|x| (x[0], x[1])).collect();
    PlanarMap::from_positions(graph, &pos)
}

/// The free `n × n` grid (no wiring), boundary at a corner.
pub fn free_grid(n: usize) -> Result<WeightedGraph> {
    free_patch(LatticeFamily::Square, n).map(|m| m.graph().clone())
}

/// `E|∂Σ| = (|V| − 1)/(κ₂/κ)` for any graph.
pub fn ell_star_finite(graph: &WeightedGraph) -> Result<f64> {
    Ok(ForestModel::new(graph)?.expected_boundary())
}

/// `n₀ / Σ_e [A_{u,v}A_{v,u} + (A_{u,v} − A_{v,u})²]` over the edges of one
/// fundamental domain, given the infinite-lattice potential kernel values.
pub fn ell_star_from_domain(n0: usize, kernel: &[(BigRational, BigRational)]) -> Result<BigRational> {
    let s = kernel.iter().fold(BigRational::zero(), |acc, (a, b)| {
        let diff = a - b;
        acc + a * b + &diff * &diff
    });
    if s.is_zero() {
        return Err(Error::InvalidArgument("kernel sum vanishes".into()));
    }
    Ok(BigRational::from_integer(n0.into()) / s)
}

/// Limiting `ℓ*` for the built-in families. On these edge-transitive
/// lattices every neighbour potential kernel value is `1/deg`.
pub fn ell_star_periodic(family: LatticeFamily) -> Result<BigRational> {
    if let LatticeFamily::Cubic(0) = family {
        return Err(Error::UnsupportedFamily(family.to_string()));
    }
    let (n0, edges) = family.fundamental_domain();
    let a = BigRational::new(1.into(), family.degree().into());
    ell_star_from_domain(n0, &vec![(a.clone(), a); edges])
}

/// `(κ₂/κ)/n²` on the free `n × n` grid.
pub fn grid_ratio_check(n: usize) -> Result<f64> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("grid size must be ≥ 8, got {n}")));
    }
    let g = free_grid(n)?;
    Ok(ForestModel::new(&g)?.ratio_k2_k() / (n * n) as f64)
}

/// `n^{-d} Σ' (4 Σ_i sin²(π k_i/n))^{-1}` over `k ∈ {1..n}^d`, omitting the
/// zero mode: the normalized trace of the discrete torus pseudo-inverse.
pub fn r_n_eigensum(d: usize, n: usize) -> Result<f64> {
    if d == 0 || n < 2 {
        return Err(Error::InvalidArgument("need d ≥ 1 and n ≥ 2".into()));
    }
    let s: Vec<f64> = (1..=n).map(|k| 4.0 * (PI * k as f64 / n as f64).sin().powi(2)).collect();
    // s[n-1] is the zero mode; sum over all d-tuples except all-zero.
    let total = sum_inverse_separable(&s, d, n - 1);
    Ok(total / (n as f64).powi(d as i32))
}

/// `Σ_{k ∈ [0,len)^d, k ≠ (z,…,z)} 1/Σ_i s[k_i]`, parallel over the first
/// index and summed in a fixed order.
fn sum_inverse_separable(s: &[f64], d: usize, zero: usize) -> f64 {
    fn rec(s: &[f64], d: usize, acc: f64, all_zero: bool, zero: usize) -> f64 {
        if d == 0 {
            return if all_zero { 0.0 } else { 1.0 / acc };
        }
        s.iter()
            .enumerate()
            .map(|(k, &x)| rec(s, d - 1, acc + x, all_zero && k == zero, zero))
            .sum()
    }
    let parts: Vec<f64> = (0..s.len())
        .into_par_iter()
        .map(|k| rec(s, d - 1, s[k], k == zero, zero))
        .collect();
    parts.iter().sum()
}

/// `Σ_v G_{v,v} / side^d` for the wired box of the given side, from the
/// separable Dirichlet spectrum `Σ_i (2 − 2cos(π k_i/(side+1)))`.
pub fn wired_box_mean_trace(d: usize, side: usize) -> Result<f64> {
    if d == 0 || side == 0 {
        return Err(Error::InvalidArgument("need d ≥ 1 and side ≥ 1".into()));
    }
    let h = PI / (side + 1) as f64;
    let s: Vec<f64> = (1..=side).map(|k| 2.0 - 2.0 * (h * k as f64).cos()).collect();
    Ok(sum_inverse_separable(&s, d, usize::MAX) / (side as f64).powi(d as i32))
}

/// A numerical value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// `e^{-x} I₀(x)` for `x ≥ 0`.
pub fn scaled_bessel_i0(x: f64) -> f64 {
    if x <= 15.0 {
        let q = x * x / 4.0;
        let (mut term, mut sum, mut k) = (1.0, 1.0, 0.0);
        while term > 1e-17 * sum {
            k += 1.0;
            term *= q / (k * k);
            sum += term;
        }
        sum * (-x).exp()
    } else {
        // Asymptotic series; stop at the smallest term.
        let (mut term, mut sum, mut k) = (1.0f64, 1.0f64, 0.0f64);
        loop {
            k += 1.0;
            let next = term * (2.0 * k - 1.0).powi(2) / (8.0 * k * x);
            if next >= term || next < 1e-17 {
                break;
            }
            term = next;
            sum += term;
        }
        sum / (2.0 * PI * x).sqrt()
    }
}

/// `R*(d) = (2π)^{-d} ∫ dθ / (2d − 2Σcos θ_i)` for `d ≥ 3`.
///
/// Writing `1/λ = ∫₀^∞ e^{-tλ} dt` turns the `d`-fold integral into
/// `∫₀^∞ (e^{-2t} I₀(2t))^d dt`, evaluated by the trapezoid rule in
/// `s = ln t` up to `t = 10⁶` plus an asymptotic tail. The error is the
/// step-halving difference plus a bound on the neglected tail terms.
pub fn r_star(d: usize) -> Result<Estimate> {
    if d <= 2 {
        return Err(Error::DivergentIntegral(d));
    }
    let df = d as f64;
    let integrand = |s: f64| {
        let t = s.exp();
        t * scaled_bessel_i0(2.0 * t).powi(d as i32)
    };
    let (lo, hi) = (-40.0f64, 1e6f64.ln());
    let trapezoid = |h: f64| {
        let steps = ((hi - lo) / h).round() as usize;
        let h = (hi - lo) / steps as f64;
        let inner: f64 = (1..steps).map(|i| integrand(lo + i as f64 * h)).sum();
        h * (inner + 0.5 * (integrand(lo) + integrand(hi)))
    };
    let fine = trapezoid(1.0 / 64.0);
    let coarse = trapezoid(1.0 / 32.0);

    // (e^{-2t} I₀(2t))^d = (4πt)^{-d/2} (1 + c₁/t + c₂/t² + O(t⁻³))
    let t = hi.exp();
    let c1 = df / 16.0;
    let c2 = df * 9.0 / 512.0 + df * (df - 1.0) / 2.0 / 256.0;
    let pre = (4.0 * PI).powf(-df / 2.0);
    let p = |j: f64| t.powf(1.0 - df / 2.0 - j) / (df / 2.0 + j - 1.0);
    let tail = pre * (p(0.0) + c1 * p(1.0) + c2 * p(2.0));
    let tail_error = pre * df * df * p(3.0);
    Ok(Estimate {
        value: fine + tail,
        error: (fine - coarse).abs() + tail_error,
    })
}

/// `C(D)` for the cuboid with the given sides: the truncated odd-index
/// series with its tail bound.
pub fn c_of_d(sides: &[f64], truncation: usize) -> Result<Estimate> {
    let d = sides.len();
    if d == 0 || sides.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::InvalidArgument("sides must be positive and finite".into()));
    }
    let n_max = if truncation % 2 == 1 { truncation } else { truncation.saturating_sub(1) };
    if n_max == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    let odd: Vec<f64> = (1..=n_max).step_by(2).map(|n| n as f64).collect();
    let inv_a: f64 = sides.iter().map(|a| 1.0 / a).product();

    fn rec(odd: &[f64], sides: &[f64], k: usize, prod: f64, quad: f64) -> f64 {
        if k == sides.len() {
            return prod / quad;
        }
        let a = sides[k];
        let mut acc = Kahan::default();
        for &n in odd {
            let n2 = n * n;
            acc.add(rec(odd, sides, k + 1, prod / n2, quad + n2 / (a * a)));
        }
        acc.sum()
    }
    let parts: Vec<f64> = odd
        .par_iter()
        .map(|&n| {
            let n2 = n * n;
            rec(&odd, sides, 1, 1.0 / n2, n2 / (sides[0] * sides[0]))
        })
        .collect();
    let mut acc = Kahan::default();
    for x in parts {
        acc.add(x);
    }
    let df = d as f64;
    let pre = 4f64.powf(2.0 * df) / PI.powf(2.0 * df + 2.0) * inv_a;
    let n = n_max as f64;
    let tail: f64 = sides
        .iter()
        .map(|a| a * a * (PI * PI / 8.0).powf(df - 1.0) / (6.0 * n * n * n))
        .sum();
    Ok(Estimate {
        value: pre * acc.sum(),
        error: pre * tail,
    })
}

/// Compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }
}

/// Monte Carlo mean exit time, in units of `n²` steps, of simple random walk
/// started uniformly in `{1..n−1}²` and stopped on leaving the open square
/// `(0, n)²`.
pub fn exit_time_monte_carlo(n: usize, walks: usize, seed: u64, workers: usize) -> Result<Estimate> {
    if n < 2 || walks < 2 {
        return Err(Error::InvalidArgument("need n ≥ 2 and at least two walks".into()));
    }
    let workers = workers.max(1);
    let per = |w: usize| walks / workers + usize::from(w < walks % workers);
    let times: Vec<f64> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = worker_rng(seed, w);
            let n = n as i64;
            (0..per(w))
                .map(|_| {
                    let mut x = rng.random_range(1..n);
                    let mut y = rng.random_range(1..n);
                    let mut steps: u64 = 0;
                    'walk: loop {
                        let mut bits: u32 = rng.random();
                        for _ in 0..16 {
                            match bits & 3 {
                                0 => x += 1,
                                1 => x -= 1,
                                2 => y += 1,
                                _ => y -= 1,
                            }
                            bits >>= 2;
                            steps += 1;
                            if x == 0 || y == 0 || x == n || y == n {
                                break 'walk;
                            }
                        }
                    }
                    steps as f64
                })
                .collect::<Vec<_>>()
        })
        .flatten()
        .collect();
    let scale = (n * n) as f64;
    let (mean, se) = mean_and_stderr(times.iter().copied());
    Ok(Estimate {
        value: mean / scale,
        error: se / scale,
    })
}

/// Exact mean exit time (in units of `n²` steps) for the same walk,
/// `4·Σ_{x,y} G(x,y) / (n−1)²` from the separable Dirichlet spectrum.
pub fn exit_time_exact(n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n ≥ 2".into()));
    }
    let side = n - 1;
    let h = PI / n as f64;
    let lam: Vec<f64> = (1..=side).map(|k| 2.0 - 2.0 * (h * k as f64).cos()).collect();
    // squared projection of the all-ones vector on each sine mode
    let proj: Vec<f64> = (1..=side)
        .map(|k| {
            let s: f64 = (1..=side).map(|x| (h * (k * x) as f64).sin()).sum();
            2.0 / n as f64 * s * s
        })
        .collect();
    let mut acc = Kahan::default();
    for i in 0..side {
        for j in 0..side {
            acc.add(proj[i] * proj[j] / (lam[i] + lam[j]));
        }
    }
    Ok(4.0 * acc.sum() / (side * side) as f64 / (n * n) as f64)
}

/// Dirichlet Green's function of `−Δ` on the unit square, summing the sine
/// series along the axis of smaller separation in closed `sinh` form.
/// Returns `+∞` when `z = z'`.
pub fn unit_square_green(z: (f64, f64), zp: (f64, f64)) -> Result<f64> {
    for p in [z, zp] {
        if !(p.0 > 0.0 && p.0 < 1.0 && p.1 > 0.0 && p.1 < 1.0) {
            return Err(Error::PointOnBoundary(p.0, p.1));
        }
    }
    // The closed-form direction is the one with larger separation.
    let (x, xp, y, yp) = if (z.0 - zp.0).abs() >= (z.1 - zp.1).abs() {
        (z.0, zp.0, z.1, zp.1)
    } else {
        (z.1, zp.1, z.0, zp.0)
    };
    let (lo, hi) = (x.min(xp), x.max(xp));
    let gap = hi - lo;
    if gap == 0.0 {
        return Ok(f64::INFINITY);
    }
    // sinh(a)sinh(b)/sinh(c) = e^{a+b−c}(1−e^{−2a})(1−e^{−2b}) / (2(1−e^{−2c}))
    let mut acc = Kahan::default();
    let mut k = 1.0f64;
    loop {
        let w = k * PI;
        let (a, b) = (w * lo, w * (1.0 - hi));
        let ratio = (a + b - w).exp() * (-(-2.0 * a).exp_m1()) * (-(-2.0 * b).exp_m1())
            / (2.0 * -(-2.0 * w).exp_m1());
        acc.add(2.0 * (w * y).sin() * (w * yp).sin() * ratio / w);
        // remaining terms are bounded by a geometric series in e^{−π·gap}
        let q = (-PI * gap).exp();
        let tail = 2.0 / w * (-w * gap).exp() * q / (1.0 - q);
        if tail < 1e-8 * acc.sum().abs().max(1e-300) || k > 1e6 {
            break;
        }
        k += 1.0;
    }
    Ok(acc.sum())
}

/// The square box with mesh `1/n` on the unit square: interior vertices
/// `(i, j)`, `1 ≤ i, j ≤ n−1`, wired exterior. Vertex of `(i, j)` is
/// `(i−1)(n−1) + (j−1)`.
pub fn unit_square_box(n: usize) -> Result<Lattice> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n ≥ 2".into()));
    }
    wired_box(2, n - 1)
}

/// Finite-`n` pair probability next to its continuum prediction.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GreenScaling {
    /// `P(z_n, z'_n ∈ Σ)` on the mesh-`1/n` box.
    pub lhs: f64,
    /// `4d·g⁰_D(z, z') / (|D| n^{2d−2})` with `d = 2`, `|D| = 1`.
    pub rhs: f64,
    pub ratio: f64,
}

/// Compares the exact pair probability with `8 g⁰(z, z')/n²`.
pub fn green_scaling_check(n: usize, z: (f64, f64), zp: (f64, f64)) -> Result<GreenScaling> {
    let lattice = unit_square_box(n)?;
    let model = ForestModel::new(&lattice.graph)?;
    green_scaling_with(&model, n, z, zp)
}

/// As [`green_scaling_check`] but reusing a model of `unit_square_box(n)`.
pub fn green_scaling_with(
    model: &ForestModel,
    n: usize,
    z: (f64, f64),
    zp: (f64, f64),
) -> Result<GreenScaling> {
    let vertex = |p: (f64, f64)| -> Result<VertexId> {
        let (i, j) = ((p.0 * n as f64).round() as i64, (p.1 * n as f64).round() as i64);
        if i < 1 || j < 1 || i > n as i64 - 1 || j > n as i64 - 1 {
            return Err(Error::PointOnBoundary(p.0, p.1));
        }
        Ok((i as usize - 1) * (n - 1) + (j as usize - 1))
    };
    let (u, v) = (vertex(z)?, vertex(zp)?);
    let g0 = unit_square_green(z, zp)?;
    let lhs = model.prob_pair_in_sigma(u, v)?;
    let rhs = 8.0 * g0 / (n * n) as f64;
    Ok(GreenScaling {
        lhs,
        rhs,
        ratio: lhs / rhs,
    })
}

/// Monte Carlo `E(A^k)/n^{2k−2}` for the area enclosed by the cycle of a
/// uniform spanning unicycle of the free `n × n` grid, sampled as dual
/// forests. Returns the normalized mean and its standard error.
pub fn area_moment_estimate(n: usize, k: u32, config: &SamplerConfig) -> Result<Estimate> {
    let map = free_patch(LatticeFamily::Square, n)?;
    let dual = crate::planar::build_dual(&map)?;
    let scale = (n as f64).powi(2 * k as i32 - 2);
    let values = map_forests(&dual.graph, config, |d| (d.size as f64).powi(k as i32) / scale);
    let (value, error) = mean_and_stderr(values.iter().copied());
    Ok(Estimate { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::green::GreenOracle;

    #[test]
    fn box_sizes_and_degrees() {
        let l = build_lattice(&LatticeSpec::new(LatticeFamily::Cubic(2), 2)).unwrap();
        assert_eq!(l.graph.vertex_count(), 10);
        for v in 0..9 {
            assert_eq!(l.graph.degree(v), 4);
        }
        let t = build_lattice(&LatticeSpec::new(LatticeFamily::Triangular, 3)).unwrap();
        assert!((0..25).all(|v| t.graph.degree(v) == 6));
        let h = build_lattice(&LatticeSpec::new(LatticeFamily::Hexagonal, 3)).unwrap();
        assert!((0..50).all(|v| h.graph.degree(v) == 3));
        for l in [&l, &t, &h] {
            assert!(l.map.is_some());
        }
        let c = build_lattice(&LatticeSpec::new(LatticeFamily::Cubic(3), 2)).unwrap();
        assert!(c.map.is_none());
        assert_eq!(c.graph.vertex_count(), 28);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("square".parse::<LatticeFamily>().unwrap(), LatticeFamily::Square);
        assert_eq!("cubic4".parse::<LatticeFamily>().unwrap(), LatticeFamily::Cubic(4));
        assert_eq!("cubic:2".parse::<LatticeFamily>().unwrap(), LatticeFamily::Cubic(2));
        assert!(matches!(
            "kagome".parse::<LatticeFamily>(),
            Err(Error::UnsupportedFamily(_))
        ));
    }

    #[test]
    fn periodic_constants() {
        let r = |a: i64| BigRational::from_integer(a.into());
        assert_eq!(ell_star_periodic(LatticeFamily::Square).unwrap(), r(8));
        assert_eq!(ell_star_periodic(LatticeFamily::Hexagonal).unwrap(), r(6));
        assert_eq!(ell_star_periodic(LatticeFamily::Triangular).unwrap(), r(12));
        assert_eq!(ell_star_periodic(LatticeFamily::Cubic(3)).unwrap(), r(12));
    }

    #[test]
    fn eigensum_small_cases() {
        assert!((r_n_eigensum(1, 3).unwrap() - 2.0 / 9.0).abs() < 1e-14);
        assert!((r_n_eigensum(2, 2).unwrap() - 5.0 / 32.0).abs() < 1e-14);
    }

    #[test]
    fn r_star_values() {
        let r = r_star(3).unwrap();
        assert!((r.value - 0.252731).abs() < 1e-5, "{r:?}");
        assert!(r.error < 1e-6);
        assert!(matches!(r_star(2), Err(Error::DivergentIntegral(2))));
    }

    #[test]
    fn bessel_branches_meet() {
        // reference values of e^{-x} I₀(x) on both sides of the switch
        assert!((scaled_bessel_i0(14.9) - 0.10425387282429126).abs() < 1e-15);
        assert!((scaled_bessel_i0(20.0) - 0.089780311884826).abs() < 1e-15);
        assert!((scaled_bessel_i0(40.0) - 0.06327827987523532).abs() < 1e-15);
        assert!((scaled_bessel_i0(0.0) - 1.0).abs() < 1e-15);
        // e^{-1} I₀(1)
        assert!((scaled_bessel_i0(1.0) - 0.4657596075936404).abs() < 1e-14);
    }

    #[test]
    fn c_of_d_symmetric_and_stable() {
        let a = c_of_d(&[1.0, 2.0], 51).unwrap();
        let b = c_of_d(&[2.0, 1.0], 51).unwrap();
        assert_eq!(a.value, b.value);
        let u = c_of_d(&[1.0, 1.0], 101).unwrap();
        let w = c_of_d(&[1.0, 1.0], 201).unwrap();
        assert!(((u.value - w.value) / w.value).abs() < 1e-4);
        assert!((u.value - 0.140577).abs() < 1e-5);
    }

    #[test]
    fn box_trace_matches_oracle() {
        let l = wired_box(3, 4).unwrap();
        let o = GreenOracle::new(&l.graph).unwrap();
        let direct = o.summary().trace() / 64.0;
        assert!((wired_box_mean_trace(3, 4).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn exit_time_exact_matches_green_sum() {
        let n = 6;
        let l = unit_square_box(n).unwrap();
        let o = GreenOracle::new(&l.graph).unwrap();
        let direct = 4.0 * o.summary().total() / 25.0 / 36.0;
        assert!((exit_time_exact(n).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn unit_square_green_symmetry() {
        let g1 = unit_square_green((0.25, 0.5), (0.75, 0.5)).unwrap();
        let g2 = unit_square_green((0.5, 0.25), (0.5, 0.75)).unwrap();
        assert!((g1 - g2).abs() < 1e-10);
        assert!(g1 > 0.0);
        assert!(unit_square_green((0.0, 0.5), (0.5, 0.5)).is_err());
        assert_eq!(unit_square_green((0.3, 0.3), (0.3, 0.3)).unwrap(), f64::INFINITY);
    }

    #[test]
    fn free_patch_euler() {
        let m = free_patch(LatticeFamily::Square, 3).unwrap();
        assert_eq!(m.face_count(), 5);
        let t = free_patch(LatticeFamily::Triangular, 3).unwrap();
        assert_eq!(t.face_count(), 9);
        let h = free_patch(LatticeFamily::Hexagonal, 3).unwrap();
        assert!(h.face_count() >= 2);
    }
}
