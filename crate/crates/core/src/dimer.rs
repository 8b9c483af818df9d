//! Bond-pattern combinatorics for dimerized chains.
//!
//! A chain of `sites` atoms carries `sites - 1` bonds, alternating
//! single/double away from defects. A domain wall is an edge where the
//! alternation phase slips: the wall bond is forced single, so the defect
//! atom next to it has single bonds on both sides, and the pattern beyond
//! continues with opposite phase. Counting double bonds ("links") in a
//! region that covers all walls and subtracting from the wall-free count
//! gives an exact integer deficit: one link per wall pair, i.e. half a
//! link per wall.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::Interval;

/// A chemical bond in the alternation pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bond {
    Single,
    Double,
}

/// The two degenerate dimerization phases. Vacuum `A` starts with a double
/// bond on edge 0; vacuum `B` starts with a single bond.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Vacuum {
    A,
    B,
}

impl Vacuum {
    pub fn flipped(self) -> Vacuum {
        match self {
            Vacuum::A => Vacuum::B,
            Vacuum::B => Vacuum::A,
        }
    }

    /// Parity offset: in this vacuum, edge `b` is double iff `b + offset` is even.
    fn offset(self) -> usize {
        match self {
            Vacuum::A => 0,
            Vacuum::B => 1,
        }
    }
}

/// Ascending edge indices at which the alternation phase flips.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainWallSpec {
    positions: Vec<usize>,
}

impl DomainWallSpec {
    /// Normalizes the positions to ascending order; the resulting pattern is
    /// independent of the order walls were listed in.
    pub fn new(mut positions: Vec<usize>) -> Result<Self, DimerError> {
        positions.sort_unstable();
        for pair in positions.windows(2) {
            if pair[1] - pair[0] < 2 {
                return Err(DimerError::WallTooClose {
                    first: pair[0],
                    second: pair[1],
                });
            }
        }
        Ok(DomainWallSpec { positions })
    }

    pub fn none() -> Self {
        DomainWallSpec { positions: Vec::new() }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// An alternating single/double bond sequence with domain-wall defects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BondPattern {
    bonds: Vec<Bond>,
    vacuum_label_left: Vacuum,
    walls: Vec<usize>,
}

/// Exact spin/charge bookkeeping, in units of the electron charge deficit
/// (`-e`) and of `hbar`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub charge: Rational64,
    pub spin: Rational64,
}

/// Link counts and the exact deficit between a defected pattern and its vacuum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkDeficit {
    pub links_vacuum: usize,
    pub links_solitonic: usize,
    pub total: Rational64,
    /// `total / wall count`; `None` for a wall-free pattern.
    pub per_wall: Option<Rational64>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DimerError {
    #[error("walls at edges {first} and {second} are closer than 2 edges apart")]
    WallTooClose { first: usize, second: usize },
    #[error("wall at edge {position} outside the valid range [1, {max}]")]
    PositionOutOfRange { position: usize, max: usize },
    #[error("a pattern needs at least 2 sites, got {got}")]
    TooFewSites { got: usize },
    #[error("region {lo}:{hi} is not a valid site range for {sites} sites")]
    RegionOutOfRange { lo: usize, hi: usize, sites: usize },
    #[error("patterns differ in length: {left} vs {right} sites")]
    LengthMismatch { left: usize, right: usize },
    #[error("region {lo}:{hi} must cover every wall; edge {wall} falls outside")]
    RegionMissesWall { lo: usize, hi: usize, wall: usize },
    #[error("unsupported filling: extra electrons must be 0 or 1, got {got}")]
    UnsupportedFilling { got: u32 },
}

impl BondPattern {
    pub fn sites(&self) -> usize {
        self.bonds.len() + 1
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn vacuum_label_left(&self) -> Vacuum {
        self.vacuum_label_left
    }

    pub fn walls(&self) -> &[usize] {
        &self.walls
    }

    /// Left-right mirror image; exchanges the A/B role as the alternation
    /// parity demands. The result equals `build_pattern` run on the mirrored
    /// wall positions.
    pub fn reflected(&self) -> BondPattern {
        let last = self.bonds.len() - 1;
        let bonds: Vec<Bond> = self.bonds.iter().rev().copied().collect();
        let walls: Vec<usize> = self.walls.iter().rev().map(|&w| last - w).collect();
        // Leftmost edge of the mirror was edge `last` with phase shifted by
        // every wall; solve `last + walls + offset ≡ offset'` (mod 2).
        let offset = (last + self.walls.len() + self.vacuum_label_left.offset()) % 2;
        let vacuum_label_left = if offset == 0 { Vacuum::A } else { Vacuum::B };
        BondPattern {
            bonds,
            vacuum_label_left,
            walls,
        }
    }

    /// One-line diagram, atoms as `o` and bonds as `=` (double) or `-` (single).
    pub fn ascii_diagram(&self) -> String {
        let mut out = String::with_capacity(self.sites() * 2);
        out.push('o');
        for bond in &self.bonds {
            out.push(match bond {
                Bond::Double => '=',
                Bond::Single => '-',
            });
            out.push('o');
        }
        out
    }
}

/// Builds the alternation pattern for the given vacuum with phase flips at
/// each wall. Wall edges are single bonds; every stretch between walls
/// alternates strictly.
pub fn build_pattern(
    sites: usize,
    vacuum: Vacuum,
    walls: &DomainWallSpec,
) -> Result<BondPattern, DimerError> {
    if sites < 2 {
        return Err(DimerError::TooFewSites { got: sites });
    }
    let max_edge = sites - 2;
    for &w in walls.positions() {
        if w < 1 || w > max_edge {
            return Err(DimerError::PositionOutOfRange {
                position: w,
                max: max_edge,
            });
        }
    }

    let mut bonds = Vec::with_capacity(sites - 1);
    let mut flips = 0usize;
    let offset = vacuum.offset();
    for b in 0..sites - 1 {
        if walls.positions().binary_search(&b).is_ok() {
            bonds.push(Bond::Single);
            flips += 1;
        } else if (b + flips + offset) % 2 == 0 {
            bonds.push(Bond::Double);
        } else {
            bonds.push(Bond::Single);
        }
    }

    Ok(BondPattern {
        bonds,
        vacuum_label_left: vacuum,
        walls: walls.positions().to_vec(),
    })
}

/// Number of double bonds with both endpoints inside `region`.
pub fn count_links(pattern: &BondPattern, region: Interval) -> Result<usize, DimerError> {
    if region.lo > region.hi || region.hi >= pattern.sites() {
        return Err(DimerError::RegionOutOfRange {
            lo: region.lo,
            hi: region.hi,
            sites: pattern.sites(),
        });
    }
    Ok(pattern
        .bonds
        .iter()
        .enumerate()
        .filter(|&(b, &bond)| bond == Bond::Double && b >= region.lo && b + 1 <= region.hi)
        .count())
}

/// Exact link deficit of `with_walls` relative to `vacuum` over `region`.
/// The region must contain every wall bond, so the deficit is independent
/// of the exact region boundaries.
pub fn link_deficit(
    with_walls: &BondPattern,
    vacuum: &BondPattern,
    region: Interval,
) -> Result<LinkDeficit, DimerError> {
    if with_walls.sites() != vacuum.sites() {
        return Err(DimerError::LengthMismatch {
            left: with_walls.sites(),
            right: vacuum.sites(),
        });
    }
    for &w in &with_walls.walls {
        if w < region.lo || w + 1 > region.hi {
            return Err(DimerError::RegionMissesWall {
                lo: region.lo,
                hi: region.hi,
                wall: w,
            });
        }
    }
    let links_vacuum = count_links(vacuum, region)?;
    let links_solitonic = count_links(with_walls, region)?;
    let total = Rational64::new(links_vacuum as i64 - links_solitonic as i64, 1);
    let per_wall = match with_walls.walls.len() {
        0 => None,
        n => Some(total / Rational64::new(n as i64, 1)),
    };
    Ok(LinkDeficit {
        links_vacuum,
        links_solitonic,
        total,
        per_wall,
    })
}

/// Spin and charge of a chain section, before/after inserting an extra
/// electron. Charge is quoted with the factor-of-two spin degeneracy already
/// applied: the half-link deficit of one wall corresponds to a full unit of
/// electric charge, and filling it with one electron leaves an unpaired spin.
pub fn spin_charge(
    soliton_present: bool,
    extra_electrons: u32,
) -> Result<QuantumNumbers, DimerError> {
    if extra_electrons > 1 {
        return Err(DimerError::UnsupportedFilling {
            got: extra_electrons,
        });
    }
    let soliton = if soliton_present { 1 } else { 0 };
    Ok(QuantumNumbers {
        charge: Rational64::new(soliton - extra_electrons as i64, 1),
        spin: Rational64::new(extra_electrons as i64, 2),
    })
}
