//! Shape and grid arguments.

use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use confgas::{make_domain, Container, PlanarDomain, ShapeSpec, TubeDomain};

/// `lo:hi:n` with both ends included, or `lo:hi:n:log` for geometric spacing.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub log: bool,
}

impl Grid {
    pub fn parse(text: &str) -> Result<Grid> {
        let parts: Vec<&str> = text.split(':').collect();
        let (lo, hi, n, log) = match parts.as_slice() {
            [lo, hi, n] => (lo, hi, n, false),
            [lo, hi, n, "log"] => (lo, hi, n, true),
            _ => bail!("grid '{text}' is not lo:hi:n or lo:hi:n:log"),
        };
        let lo: f64 = lo.trim().parse().with_context(|| format!("bad grid start in '{text}'"))?;
        let hi: f64 = hi.trim().parse().with_context(|| format!("bad grid end in '{text}'"))?;
        let n: usize = n.trim().parse().with_context(|| format!("bad grid count in '{text}'"))?;
        if n == 0 || !lo.is_finite() || !hi.is_finite() {
            bail!("grid '{text}' needs n ≥ 1 and finite ends");
        }
        if n == 1 && lo != hi {
            bail!("grid '{text}' has one point but two different ends");
        }
        if log && !(lo > 0.0 && hi > 0.0) {
            bail!("log grid '{text}' needs positive ends");
        }
        Ok(Grid { lo, hi, n, log })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let last = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                if i == self.n - 1 {
                    return self.hi;
                }
                let f = i as f64 / last;
                if self.log {
                    self.lo * (self.hi / self.lo).powf(f)
                } else {
                    self.lo + (self.hi - self.lo) * f
                }
            })
            .collect()
    }
}

/// A fixed value or a grid.
pub fn values(single: Option<f64>, grid: Option<&Grid>, name: &str) -> Result<Vec<f64>> {
    match (single, grid) {
        (Some(x), None) => Ok(vec![x]),
        (None, Some(g)) => Ok(g.points()),
        (Some(_), Some(_)) => bail!("give either --{name} or --{name}-grid, not both"),
        (None, None) => bail!("one of --{name} or --{name}-grid is required"),
    }
}

/// Shape text accepted by `--shape`: the library forms plus
/// `polygon:@file`, `free:Ω` (no boundary) and `domain:Ω,L,r`.
pub fn parse_shape(text: &str) -> Result<(Option<ShapeSpec>, PlanarDomain)> {
    if let Some(path) = text.strip_prefix("polygon:@") {
        let body = fs::read_to_string(path).with_context(|| format!("cannot read polygon file {path}"))?;
        let spec = ShapeSpec::parse_polygon(&body)?;
        let dom = make_domain(&spec)?;
        return Ok((Some(spec), dom));
    }
    if let Some(area) = text.strip_prefix("free:") {
        let area: f64 = area.trim().parse().with_context(|| format!("bad area in '{text}'"))?;
        return Ok((None, PlanarDomain::free_space(area)?));
    }
    if let Some(args) = text.strip_prefix("domain:") {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let [area, perimeter, holes] = parts.as_slice() else {
            bail!("domain needs area, perimeter and hole count: domain:Ω,L,r");
        };
        let dom = PlanarDomain::new(
            area.parse().with_context(|| format!("bad area in '{text}'"))?,
            perimeter.parse().with_context(|| format!("bad perimeter in '{text}'"))?,
            holes.parse().with_context(|| format!("bad hole count in '{text}'"))?,
        )?;
        return Ok((None, dom));
    }
    let spec = ShapeSpec::parse(text)?;
    let dom = make_domain(&spec)?;
    Ok((Some(spec), dom))
}

pub fn container(shape: &str, lz: Option<f64>) -> Result<Container> {
    let (_, dom) = parse_shape(shape)?;
    Ok(match lz {
        Some(lz) => TubeDomain::new(dom, lz)?.into(),
        None => dom.into(),
    })
}

/// Shapes with an exact spectrum.
pub fn spectral_shape(text: &str) -> Result<ShapeSpec> {
    match parse_shape(text)? {
        (Some(spec @ (ShapeSpec::Rectangle { .. } | ShapeSpec::Disk { .. } | ShapeSpec::Annulus { .. })), _) => {
            Ok(spec)
        }
        _ => Err(anyhow!("exact spectra exist only for rect, disk and annulus shapes")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_includes_both_ends() {
        let g = Grid::parse("1:2:5").unwrap();
        assert_eq!(g.points(), vec![1.0, 1.25, 1.5, 1.75, 2.0]);
        let g = Grid::parse("10:1000:3:log").unwrap();
        let p = g.points();
        assert_eq!(p[2], 1000.0);
        assert!((p[1] - 100.0).abs() < 1e-12);
        assert_eq!(Grid::parse("3:3:1").unwrap().points(), vec![3.0]);
    }

    #[test]
    fn bad_grids() {
        for text in ["1:2", "1:2:0", "a:2:3", "0:1:3:log", "1:2:1", "1:2:3:lin"] {
            assert!(Grid::parse(text).is_err(), "{text}");
        }
    }

    #[test]
    fn shapes() {
        let (_, d) = parse_shape("free:4").unwrap();
        assert_eq!((d.perimeter(), d.holes()), (0.0, 1));
        let (_, d) = parse_shape("domain:10,20,2").unwrap();
        assert_eq!(d.holes(), 2);
        assert!(parse_shape("disk:1").unwrap().0.is_some());
        assert!(spectral_shape("free:4").is_err());
        assert!(parse_shape("polygon:@/nonexistent").is_err());
    }
}
