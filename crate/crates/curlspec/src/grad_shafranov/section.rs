//! Cross-section geometry in the (r, z) half-plane, including the
//! plain-text grid-mask format.

use crate::error::{Error, Result};

/// Planar cross-section of a solid torus of revolution. The closure must be
/// contained in the open half-plane r > 0.
#[derive(Debug, Clone)]
pub enum CrossSection {
    /// Disk of given radius centred at (center_r, 0).
    Disk { center_r: f64, radius: f64 },
    /// Axis-aligned rectangle [r_min, r_max] x [z_min, z_max].
    Rectangle { r_min: f64, r_max: f64, z_min: f64, z_max: f64 },
    /// Arbitrary occupancy mask over a uniform grid.
    Mask(GridMask),
}

impl CrossSection {
    pub fn disk(center_r: f64, radius: f64) -> Result<Self> {
        let s = CrossSection::Disk { center_r, radius };
        s.validate()?;
        Ok(s)
    }

    pub fn rectangle(r_min: f64, r_max: f64, z_min: f64, z_max: f64) -> Result<Self> {
        let s = CrossSection::Rectangle { r_min, r_max, z_min, z_max };
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self {
            CrossSection::Disk { center_r, radius } => {
                if !(*radius > 0.0) {
                    return Err(Error::InvalidSection(format!("radius must be positive, got {radius}")));
                }
                if !(*center_r - *radius > 0.0) {
                    return Err(Error::InvalidSection(format!(
                        "disk must stay in r > 0: center_r - radius = {}",
                        center_r - radius
                    )));
                }
                Ok(())
            }
            CrossSection::Rectangle { r_min, r_max, z_min, z_max } => {
                if !(*r_min > 0.0) || !(r_max > r_min) {
                    return Err(Error::InvalidSection(format!(
                        "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
                    )));
                }
                if !(z_max > z_min) {
                    return Err(Error::InvalidSection(format!(
                        "need z_min < z_max, got [{z_min}, {z_max}]"
                    )));
                }
                Ok(())
            }
            CrossSection::Mask(mask) => mask.validate(),
        }
    }

    /// Infimum of r over the section.
    pub fn r_min(&self) -> f64 {
        match self {
            CrossSection::Disk { center_r, radius } => center_r - radius,
            CrossSection::Rectangle { r_min, .. } => *r_min,
            CrossSection::Mask(mask) => mask.occupied_r_range().0,
        }
    }

    /// Supremum of r over the section.
    pub fn r_max(&self) -> f64 {
        match self {
            CrossSection::Disk { center_r, radius } => center_r + radius,
            CrossSection::Rectangle { r_max, .. } => *r_max,
            CrossSection::Mask(mask) => mask.occupied_r_range().1,
        }
    }
}

/// Boolean cell occupancy over a uniform (r, z) grid. Cell (i, j) spans
/// [r0 + i h, r0 + (i+1) h] x [z0 + j h, z0 + (j+1) h].
///
/// Text format: a header line `r0 z0 h nr nz` followed by nz rows of nr
/// characters '0'/'1', row j = 0 first.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    pub r0: f64,
    pub z0: f64,
    pub h: f64,
    pub nr: usize,
    pub nz: usize,
    cells: Vec<bool>,
}

impl GridMask {
    pub fn new(r0: f64, z0: f64, h: f64, nr: usize, nz: usize, cells: Vec<bool>) -> Result<Self> {
        if cells.len() != nr * nz {
            return Err(Error::MaskParse(format!(
                "expected {} cells, got {}",
                nr * nz,
                cells.len()
            )));
        }
        let mask = GridMask { r0, z0, h, nr, nz, cells };
        mask.validate()?;
        Ok(mask)
    }

    /// Fully occupied mask (a rectangle, staircase-free).
    pub fn filled(r0: f64, z0: f64, h: f64, nr: usize, nz: usize) -> Result<Self> {
        GridMask::new(r0, z0, h, nr, nz, vec![true; nr * nz])
    }

    fn validate(&self) -> Result<()> {
        if !(self.h > 0.0) {
            return Err(Error::InvalidSection(format!("mask spacing must be positive, got {}", self.h)));
        }
        if self.nr == 0 || self.nz == 0 {
            return Err(Error::InvalidSection("mask must have at least one cell".into()));
        }
        if !(self.r0 > 0.0) {
            return Err(Error::InvalidSection(format!(
                "mask must stay in r > 0: r0 = {}",
                self.r0
            )));
        }
        if !self.cells.iter().any(|&c| c) {
            return Err(Error::InvalidSection("mask has no occupied cells".into()));
        }
        Ok(())
    }

    #[inline]
    pub fn cell(&self, i: isize, j: isize) -> bool {
        if i < 0 || j < 0 || i as usize >= self.nr || j as usize >= self.nz {
            return false;
        }
        self.cells[j as usize * self.nr + i as usize]
    }

    pub fn set_cell(&mut self, i: usize, j: usize, occupied: bool) {
        assert!(i < self.nr && j < self.nz);
        self.cells[j * self.nr + i] = occupied;
    }

    /// (min, max) of r over occupied cells.
    pub fn occupied_r_range(&self) -> (f64, f64) {
        let mut lo = usize::MAX;
        let mut hi = 0usize;
        for j in 0..self.nz {
            for i in 0..self.nr {
                if self.cells[j * self.nr + i] {
                    lo = lo.min(i);
                    hi = hi.max(i + 1);
                }
            }
        }
        (self.r0 + lo as f64 * self.h, self.r0 + hi as f64 * self.h)
    }

    /// True when every occupied cell of `self` is occupied in `other`
    /// (same grid layout required).
    pub fn is_subset_of(&self, other: &GridMask) -> bool {
        self.nr == other.nr
            && self.nz == other.nz
            && self.r0 == other.r0
            && self.z0 == other.z0
            && self.h == other.h
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| !a || b)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::MaskParse("empty mask file".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::MaskParse(format!(
                "header must be 'r0 z0 h nr nz', got '{header}'"
            )));
        }
        let parse_f = |s: &str, name: &str| -> Result<f64> {
            s.parse::<f64>()
                .map_err(|_| Error::MaskParse(format!("bad {name}: '{s}'")))
        };
        let parse_u = |s: &str, name: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::MaskParse(format!("bad {name}: '{s}'")))
        };
        let r0 = parse_f(fields[0], "r0")?;
        let z0 = parse_f(fields[1], "z0")?;
        let h = parse_f(fields[2], "grid_h")?;
        let nr = parse_u(fields[3], "nr")?;
        let nz = parse_u(fields[4], "nz")?;
        let mut cells = Vec::with_capacity(nr * nz);
        for j in 0..nz {
            let row = lines
                .next()
                .ok_or_else(|| Error::MaskParse(format!("missing row {j}")))?;
            let row = row.trim();
            if row.len() != nr {
                return Err(Error::MaskParse(format!(
                    "row {j} has {} entries, expected {nr}",
                    row.len()
                )));
            }
            for ch in row.chars() {
                match ch {
                    '0' => cells.push(false),
                    '1' => cells.push(true),
                    _ => return Err(Error::MaskParse(format!("row {j}: invalid character '{ch}'"))),
                }
            }
        }
        GridMask::new(r0, z0, h, nr, nz, cells)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:.17e} {:.17e} {:.17e} {} {}\n", self.r0, self.z0, self.h, self.nr, self.nz);
        for j in 0..self.nz {
            for i in 0..self.nr {
                out.push(if self.cells[j * self.nr + i] { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn read_file(path: &std::path::Path) -> Result<Self> {
        GridMask::parse(&std::fs::read_to_string(path)?)
    }

    pub fn write_file(&self, path: &std::path::Path) -> Result<()> {
        Ok(std::fs::write(path, self.to_text())?)
    }
}
