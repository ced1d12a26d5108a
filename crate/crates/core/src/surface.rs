//! Numerical data of graded marked surfaces, critical values and the annulus
//! certificate. Everything here is exact.

use std::collections::BTreeSet;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Boundary {
    pub marked: u32,
    pub winding: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub genus: u32,
    pub boundaries: Vec<Boundary>,
}

impl SurfaceData {
    pub fn new(genus: u32, boundaries: Vec<Boundary>) -> Result<Self> {
        let s = Self { genus, boundaries };
        s.validate()?;
        Ok(s)
    }

    /// Disk with `n+1` marked points.
    pub fn disk(n: u32) -> Result<Self> {
        Self::new(0, vec![Boundary { marked: n + 1, winding: -2 }])
    }

    /// Annulus with `m` and `r` marked points and windings `(w, -w)`.
    pub fn annulus(m: u32, r: u32, w: i64) -> Result<Self> {
        Self::new(
            0,
            vec![
                Boundary { marked: m, winding: w },
                Boundary { marked: r, winding: -w },
            ],
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.boundaries.is_empty() {
            return Err(Error::InvalidSurface("need at least one boundary".into()));
        }
        if let Some(k) = self.boundaries.iter().position(|b| b.marked == 0) {
            return Err(Error::InvalidSurface(format!(
                "boundary {k} has no marked points"
            )));
        }
        let total: i64 = self.boundaries.iter().map(|b| b.winding).sum();
        let want = 4 * self.genus as i64 - 4 + 2 * self.boundaries.len() as i64;
        if total != want {
            return Err(Error::InvalidSurface(format!(
                "windings sum to {total}, expected 4g-4+2b = {want}"
            )));
        }
        let rank = self.rank_unchecked();
        if rank < 2 {
            return Err(Error::InvalidSurface(format!("rank {rank} is below 2")));
        }
        Ok(())
    }

    fn rank_unchecked(&self) -> i64 {
        let aleph: i64 = self.boundaries.iter().map(|b| b.marked as i64).sum();
        2 * self.genus as i64 + self.boundaries.len() as i64 + aleph - 2
    }
}

/// `2g + b + aleph - 2`, with `aleph` the total number of marked points.
pub fn surface_rank(s: &SurfaceData) -> Result<usize> {
    s.validate()?;
    Ok(s.rank_unchecked() as usize)
}

/// `1 + w/m`.
pub fn cycle_value(marked: u32, winding: i64) -> Result<Rational64> {
    if marked == 0 {
        return Err(Error::InvalidSurface("boundary with no marked points".into()));
    }
    Ok(Rational64::one() + Rational64::new(winding, marked as i64))
}

/// `{1} u {1 + w/m : w >= 0}`; with `include_negative` every boundary counts.
pub fn critical_values(s: &SurfaceData, include_negative: bool) -> Result<BTreeSet<Rational64>> {
    s.validate()?;
    let mut out = BTreeSet::from([Rational64::one()]);
    for b in &s.boundaries {
        if b.winding >= 0 || include_negative {
            out.insert(cycle_value(b.marked, b.winding)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexVariant {
    /// `floor(jc) - floor((j-1)c)`, phases `frac(jc)` in `[0,1)`.
    #[default]
    Floor,
    /// `ceil(jc) - ceil((j-1)c)`, phases `jc - ceil(jc) + 1` in `(0,1]`.
    Ceiling,
}

fn check_annulus(m: u32, r: u32, w: i64) -> Result<()> {
    if m == 0 || r == 0 {
        return Err(Error::Unsupported(format!(
            "annulus needs m, r >= 1, got m = {m}, r = {r}"
        )));
    }
    if w < 0 {
        return Err(Error::Unsupported(format!("winding {w} < 0")));
    }
    Ok(())
}

fn round(x: Rational64, variant: IndexVariant) -> i64 {
    match variant {
        IndexVariant::Floor => x.floor().to_integer(),
        IndexVariant::Ceiling => x.ceil().to_integer(),
    }
}

/// Distribution of `m + w` over `m` slots by rounding differences of
/// `j (m+w)/m`.
pub fn annulus_indices(m: u32, r: u32, w: i64, variant: IndexVariant) -> Result<Vec<i64>> {
    check_annulus(m, r, w)?;
    let c = Rational64::new(m as i64 + w, m as i64);
    Ok((1..=m as i64)
        .map(|j| round(c * j, variant) - round(c * (j - 1), variant))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusCertificate {
    pub m: u32,
    pub r: u32,
    pub w: i64,
    pub variant: IndexVariant,
    pub indices: Vec<i64>,
    /// Phases of the minimal arcs `eta_1..eta_m`.
    pub phases: Vec<Rational64>,
    /// `phi_{j+1} - phi_j + i_j`, with `phi_{m+1} = phi_1`.
    pub gaps: Vec<Rational64>,
    pub gap: Rational64,
    pub gd: Rational64,
}

pub fn annulus_certificate(m: u32, r: u32, w: i64, variant: IndexVariant) -> Result<AnnulusCertificate> {
    let indices = annulus_indices(m, r, w, variant)?;
    let c = Rational64::new(m as i64 + w, m as i64);
    let phases: Vec<Rational64> = (0..m as i64)
        .map(|j| {
            let x = c * j;
            match variant {
                IndexVariant::Floor => x - x.floor(),
                IndexVariant::Ceiling => x - x.ceil() + Rational64::one(),
            }
        })
        .collect();
    let mm = m as usize;
    let gaps = (0..mm)
        .map(|j| phases[(j + 1) % mm] - phases[j] + Rational64::from_integer(indices[j]))
        .collect();
    Ok(AnnulusCertificate {
        m,
        r,
        w,
        variant,
        indices,
        phases,
        gaps,
        gap: c,
        gd: cycle_value(m, w)?,
    })
}

impl AnnulusCertificate {
    /// Rechecks the index sum, the index bounds, every gap and the value of
    /// Gd against the critical values of the annulus.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(Error::InvalidSurface(what));
        let m = self.m as i64;
        let sum: i64 = self.indices.iter().sum();
        if sum != m + self.w {
            return fail(format!("indices sum to {sum}, expected {}", m + self.w));
        }
        let lo = Integer::div_floor(&(m + self.w), &m);
        if let Some(i) = self.indices.iter().find(|&&i| i < lo || i > lo + 1) {
            return fail(format!("index {i} outside [{lo}, {}]", lo + 1));
        }
        let c = Rational64::new(m + self.w, m);
        if let Some(g) = self.gaps.iter().find(|&&g| g != c) {
            return fail(format!("gap {g} differs from {c}"));
        }
        let in_range = |p: &Rational64| match self.variant {
            IndexVariant::Floor => *p >= Rational64::zero() && *p < Rational64::one(),
            IndexVariant::Ceiling => *p > Rational64::zero() && *p <= Rational64::one(),
        };
        if let Some(p) = self.phases.iter().find(|p| !in_range(p)) {
            return fail(format!("phase {p} outside the variant's range"));
        }
        if self.gd != c || self.gap != c {
            return fail(format!("Gd {} differs from 1 + w/m = {c}", self.gd));
        }
        let cv = critical_values(&SurfaceData::annulus(self.m, self.r, self.w)?, false)?;
        if !cv.contains(&self.gd) {
            return fail(format!("Gd {} is not a critical value", self.gd));
        }
        Ok(())
    }
}
