//! Container geometry and the boundary-corrected single-particle state sum.
//!
//! A planar Dirichlet domain enters the thermodynamics only through three
//! numbers: its area `Ω`, total boundary length `L` (outer boundary plus
//! every hole boundary), and hole count `r`. The state sum is then
//!
//! ```text
//! Σ_s e^{−βε_s} ≈ Ω/λ² − L/(4λ) + (1−r)/6.
//! ```
//!
//! The constant `(1−r)/6` assumes a smooth boundary. Polygons are accepted,
//! but their corners change the constant (each right angle contributes
//! `1/16`), and no corner term is added here.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Natural units: `ħ = m = k_B = 1`, so `h = 2π` and `λ = √(2π/T)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitSystem;

impl UnitSystem {
    pub const HBAR: f64 = 1.0;
    pub const MASS: f64 = 1.0;
    pub const BOLTZMANN: f64 = 1.0;
    pub const PLANCK: f64 = 2.0 * PI;
}

/// Weyl descriptors of a planar container.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanarDomain {
    area: f64,
    perimeter: f64,
    holes: u32,
}

impl PlanarDomain {
    pub fn new(area: f64, perimeter: f64, holes: u32) -> Result<Self> {
        if !(area > 0.0 && area.is_finite()) {
            return Err(Error::Geometry(format!("area must be positive, got {area}")));
        }
        if !(perimeter >= 0.0 && perimeter.is_finite()) {
            return Err(Error::Geometry(format!("perimeter must be non-negative, got {perimeter}")));
        }
        if perimeter == 0.0 && holes != 1 {
            return Err(Error::Geometry(
                "zero perimeter is reserved for the free-space configuration (holes = 1)".into(),
            ));
        }
        if perimeter > 0.0 && perimeter * perimeter < 4.0 * PI * area * (1.0 - 1e-12) {
            return Err(Error::Geometry(format!(
                "isoperimetric inequality violated: L² = {} < 4πΩ = {}",
                perimeter * perimeter,
                4.0 * PI * area
            )));
        }
        Ok(PlanarDomain { area, perimeter, holes })
    }

    /// The reference configuration without boundary: `L = 0`, `r = 1`, so both
    /// corrections vanish.
    pub fn free_space(area: f64) -> Result<Self> {
        PlanarDomain::new(area, 0.0, 1)
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    pub fn holes(&self) -> u32 {
        self.holes
    }

    /// `(1 − r)/6`, the connectivity coefficient.
    pub fn connectivity(&self) -> f64 {
        (1.0 - f64::from(self.holes)) / 6.0
    }

    pub fn is_free_space(&self) -> bool {
        self.perimeter == 0.0 && self.holes == 1
    }

    /// Every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        PlanarDomain::new(self.area * s * s, self.perimeter * s, self.holes)
    }
}

/// Minimum `L_z/√Ω` accepted for a tube.
pub const TUBE_MIN_ASPECT: f64 = 10.0;
/// Below this `L_z/√Ω` a tube is accepted with a warning.
pub const TUBE_WARN_ASPECT: f64 = 100.0;

/// A long straight tube with a uniform cross-section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TubeDomain {
    cross_section: PlanarDomain,
    length_z: f64,
}

impl TubeDomain {
    pub fn new(cross_section: PlanarDomain, length_z: f64) -> Result<Self> {
        if !(length_z > 0.0 && length_z.is_finite()) {
            return Err(Error::Geometry(format!("tube length must be positive, got {length_z}")));
        }
        let scale = cross_section.area.sqrt();
        if length_z < TUBE_MIN_ASPECT * scale {
            return Err(Error::Geometry(format!(
                "tube length {length_z} is shorter than {TUBE_MIN_ASPECT}·√Ω = {}",
                TUBE_MIN_ASPECT * scale
            )));
        }
        Ok(TubeDomain { cross_section, length_z })
    }

    pub fn cross_section(&self) -> &PlanarDomain {
        &self.cross_section
    }

    pub fn length_z(&self) -> f64 {
        self.length_z
    }

    pub fn volume(&self) -> f64 {
        self.length_z * self.cross_section.area
    }

    /// True when `L_z < 100·√Ω`: accepted, but the continuum treatment of the
    /// axial momentum is less trustworthy.
    pub fn is_short(&self) -> bool {
        self.length_z < TUBE_WARN_ASPECT * self.cross_section.area.sqrt()
    }
}

/// Shapes whose descriptors can be computed, and whose spectra (for
/// rectangles, disks and annuli) the oracle can enumerate.
#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Rectangle { a: f64, b: f64 },
    Disk { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    PolygonWithHoles { outer: Vec<[f64; 2]>, holes: Vec<Vec<[f64; 2]>> },
}

impl ShapeSpec {
    /// Parses `rect:a,b`, `disk:R` or `annulus:Ri,Ro`. Polygons come from
    /// [`ShapeSpec::parse_polygon`].
    pub fn parse(text: &str) -> Result<ShapeSpec> {
        let (kind, args) = text
            .split_once(':')
            .ok_or_else(|| Error::Geometry(format!("shape '{text}' lacks a 'kind:' prefix")))?;
        let nums = || -> Result<Vec<f64>> {
            args.split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Geometry(format!("bad number '{s}' in shape '{text}'")))
                })
                .collect()
        };
        let spec = match kind.trim() {
            "rect" | "rectangle" => match nums()?.as_slice() {
                [a, b] => ShapeSpec::Rectangle { a: *a, b: *b },
                _ => return Err(Error::Geometry("rect needs two lengths: rect:a,b".into())),
            },
            "disk" => match nums()?.as_slice() {
                [r] => ShapeSpec::Disk { radius: *r },
                _ => return Err(Error::Geometry("disk needs one radius: disk:R".into())),
            },
            "annulus" => match nums()?.as_slice() {
                [ri, ro] => ShapeSpec::Annulus { inner: *ri, outer: *ro },
                _ => return Err(Error::Geometry("annulus needs two radii: annulus:Ri,Ro".into())),
            },
            other => return Err(Error::Geometry(format!("unknown shape kind '{other}'"))),
        };
        Ok(spec)
    }

    /// Reads rings of `x y` vertex lines separated by blank lines; the first
    /// ring is the outer boundary, the rest are holes. `#` starts a comment.
    pub fn parse_polygon(text: &str) -> Result<ShapeSpec> {
        let mut rings: Vec<Vec<[f64; 2]>> = Vec::new();
        let mut current = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                if !current.is_empty() {
                    rings.push(std::mem::take(&mut current));
                }
                continue;
            }
            let mut it = line.split_whitespace().map(str::parse::<f64>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(x)), Some(Ok(y)), None) => current.push([x, y]),
                _ => {
                    return Err(Error::Geometry(format!(
                        "polygon line {}: expected 'x y', got '{raw}'",
                        lineno + 1
                    )))
                }
            }
        }
        if !current.is_empty() {
            rings.push(current);
        }
        let mut rings = rings.into_iter();
        let outer = rings
            .next()
            .ok_or_else(|| Error::Geometry("polygon file contains no rings".into()))?;
        Ok(ShapeSpec::PolygonWithHoles { outer, holes: rings.collect() })
    }

    /// Every length multiplied by `s`.
    pub fn scaled(&self, s: f64) -> ShapeSpec {
        let ring = |r: &Vec<[f64; 2]>| r.iter().map(|p| [p[0] * s, p[1] * s]).collect();
        match self {
            ShapeSpec::Rectangle { a, b } => ShapeSpec::Rectangle { a: a * s, b: b * s },
            ShapeSpec::Disk { radius } => ShapeSpec::Disk { radius: radius * s },
            ShapeSpec::Annulus { inner, outer } => {
                ShapeSpec::Annulus { inner: inner * s, outer: outer * s }
            }
            ShapeSpec::PolygonWithHoles { outer, holes } => ShapeSpec::PolygonWithHoles {
                outer: ring(outer),
                holes: holes.iter().map(ring).collect(),
            },
        }
    }
}

impl fmt::Display for ShapeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeSpec::Rectangle { a, b } => write!(f, "rect:{a},{b}"),
            ShapeSpec::Disk { radius } => write!(f, "disk:{radius}"),
            ShapeSpec::Annulus { inner, outer } => write!(f, "annulus:{inner},{outer}"),
            ShapeSpec::PolygonWithHoles { outer, holes } => {
                write!(f, "polygon:{}v/{}h", outer.len(), holes.len())
            }
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Geometry(format!("{name} must be positive and finite, got {v}")))
    }
}

/// `(Ω, L, r)` of a shape.
pub fn make_domain(spec: &ShapeSpec) -> Result<PlanarDomain> {
    match *spec {
        ShapeSpec::Rectangle { a, b } => {
            positive("rectangle side", a)?;
            positive("rectangle side", b)?;
            PlanarDomain::new(a * b, 2.0 * (a + b), 0)
        }
        ShapeSpec::Disk { radius } => {
            positive("radius", radius)?;
            PlanarDomain::new(PI * radius * radius, 2.0 * PI * radius, 0)
        }
        ShapeSpec::Annulus { inner, outer } => {
            positive("inner radius", inner)?;
            positive("outer radius", outer)?;
            if inner >= outer {
                return Err(Error::Geometry(format!(
                    "annulus needs inner < outer, got {inner} >= {outer}"
                )));
            }
            PlanarDomain::new(
                PI * (outer * outer - inner * inner),
                2.0 * PI * (inner + outer),
                1,
            )
        }
        ShapeSpec::PolygonWithHoles { ref outer, ref holes } => polygon_domain(outer, holes),
    }
}

fn polygon_domain(outer: &[[f64; 2]], holes: &[Vec<[f64; 2]>]) -> Result<PlanarDomain> {
    let rings: Vec<&[[f64; 2]]> =
        std::iter::once(outer).chain(holes.iter().map(Vec::as_slice)).collect();
    for (i, ring) in rings.iter().enumerate() {
        check_ring(ring).map_err(|e| Error::Geometry(format!("ring {i}: {e}")))?;
    }
    for i in 0..rings.len() {
        for j in i + 1..rings.len() {
            if rings_cross(rings[i], rings[j]) {
                return Err(Error::Geometry(format!("rings {i} and {j} intersect")));
            }
        }
    }
    for (k, hole) in holes.iter().enumerate() {
        if !hole.iter().all(|p| point_in_ring(*p, outer)) {
            return Err(Error::Geometry(format!("hole {k} is not strictly inside the outer ring")));
        }
        for (m, other) in holes.iter().enumerate() {
            if m != k && point_in_ring(hole[0], other) {
                return Err(Error::Geometry(format!("hole {k} lies inside hole {m}")));
            }
        }
    }
    let area = shoelace(outer).abs() - holes.iter().map(|h| shoelace(h).abs()).sum::<f64>();
    let perimeter: f64 = rings.iter().map(|r| ring_length(r)).sum();
    if !(area > 0.0) {
        return Err(Error::Geometry(format!("polygon has non-positive area {area}")));
    }
    PlanarDomain::new(area, perimeter, holes.len() as u32)
}

fn shoelace(ring: &[[f64; 2]]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            p[0] * q[1] - q[0] * p[1]
        })
        .sum::<f64>()
        / 2.0
}

fn ring_length(ring: &[[f64; 2]]) -> f64 {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let (p, q) = (ring[i], ring[(i + 1) % n]);
            (q[0] - p[0]).hypot(q[1] - p[1])
        })
        .sum()
}

fn edges(ring: &[[f64; 2]]) -> impl Iterator<Item = ([f64; 2], [f64; 2])> + '_ {
    let n = ring.len();
    (0..n).map(move |i| (ring[i], ring[(i + 1) % n]))
}

fn check_ring(ring: &[[f64; 2]]) -> std::result::Result<(), String> {
    if ring.len() < 3 {
        return Err(format!("needs at least 3 vertices, has {}", ring.len()));
    }
    if ring.iter().flatten().any(|c| !c.is_finite()) {
        return Err("non-finite coordinate".into());
    }
    let n = ring.len();
    for i in 0..n {
        if ring[i] == ring[(i + 1) % n] {
            return Err(format!("repeated vertex at index {i}"));
        }
    }
    if shoelace(ring).abs() <= 1e-14 * ring_length(ring).powi(2) {
        return Err("degenerate ring with zero area".into());
    }
    let e: Vec<_> = edges(ring).collect();
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // Adjacent edges may only share their common vertex.
                if collinear_overlap(e[i], e[j]) {
                    return Err(format!("edges {i} and {j} fold back on each other"));
                }
                continue;
            }
            if segments_intersect(e[i].0, e[i].1, e[j].0, e[j].1) {
                return Err(format!("self-intersection between edges {i} and {j}"));
            }
        }
    }
    Ok(())
}

fn rings_cross(a: &[[f64; 2]], b: &[[f64; 2]]) -> bool {
    edges(a).any(|(p, q)| edges(b).any(|(r, s)| segments_intersect(p, q, r, s)))
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

fn on_segment(a: [f64; 2], b: [f64; 2], p: [f64; 2]) -> bool {
    p[0] >= a[0].min(b[0]) && p[0] <= a[0].max(b[0]) && p[1] >= a[1].min(b[1]) && p[1] <= a[1].max(b[1])
}

/// Closed-segment intersection test (touching counts).
fn segments_intersect(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> bool {
    let d1 = orient(r, s, p);
    let d2 = orient(r, s, q);
    let d3 = orient(p, q, r);
    let d4 = orient(p, q, s);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(r, s, p))
        || (d2 == 0.0 && on_segment(r, s, q))
        || (d3 == 0.0 && on_segment(p, q, r))
        || (d4 == 0.0 && on_segment(p, q, s))
}

fn collinear_overlap(e1: ([f64; 2], [f64; 2]), e2: ([f64; 2], [f64; 2])) -> bool {
    // Shared vertex is one endpoint of each; they overlap iff collinear and
    // pointing the same way from it.
    let (shared, a, b) = if e1.1 == e2.0 {
        (e1.1, e1.0, e2.1)
    } else {
        (e1.0, e1.1, e2.0)
    };
    let da = [a[0] - shared[0], a[1] - shared[1]];
    let db = [b[0] - shared[0], b[1] - shared[1]];
    da[0] * db[1] - da[1] * db[0] == 0.0 && da[0] * db[0] + da[1] * db[1] > 0.0
}

/// Strict interior test by ray casting; points on the boundary count as outside.
fn point_in_ring(p: [f64; 2], ring: &[[f64; 2]]) -> bool {
    if edges(ring).any(|(a, b)| orient(a, b, p) == 0.0 && on_segment(a, b, p)) {
        return false;
    }
    let mut inside = false;
    for (a, b) in edges(ring) {
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// `λ = √(2π/T)`.
pub fn thermal_wavelength(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) || !temperature.is_finite() {
        return Err(Error::Domain(format!("temperature must be positive, got {temperature}")));
    }
    Ok((2.0 * PI / temperature).sqrt())
}

/// `Ω/λ² − L/(4λ) + (1−r)/6`, refused when not positive.
pub fn weyl_state_sum(dom: &PlanarDomain, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!("wavelength must be positive, got {lambda}")));
    }
    let value =
        dom.area / (lambda * lambda) - 0.25 * dom.perimeter / lambda + dom.connectivity();
    if !(value > 0.0) {
        return Err(Error::Model(format!(
            "state sum {value} is not positive at λ = {lambda}; the wavelength is too large for this domain"
        )));
    }
    Ok(value)
}
