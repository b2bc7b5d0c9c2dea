use std::collections::{BTreeMap, BTreeSet};

use lambda_pairs::combinatorics::{BoxShape, Flavor, Partition};
use lambda_pairs::orbit::{enumerate_matrices, Cell, Region};
use serde::Serialize;
use thiserror::Error;

/// Largest region the oracle will enumerate.
pub const MAX_CELLS: usize = 9;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("field size must be 2 or 3, got {0}")]
    Field(u8),
    #[error("region of {lambda} has {cells} cells; the oracle stops at {MAX_CELLS}")]
    TooLarge { lambda: Partition, cells: usize },
    #[error("the oracle covers type A boxes only")]
    Flavor,
    #[error(transparent)]
    Core(#[from] lambda_pairs::Error),
}

/// One orbit of `B_λ` on `M_λ` over `F_p`.
#[derive(Clone, Debug, Serialize)]
pub struct FfOrbit {
    pub size: usize,
    /// The 0-1 matrices (as supports) met by the orbit.
    pub zero_one: Vec<BTreeSet<Cell>>,
    /// Corner ranks `rank A_{[1,p]×[1,q]}`, shared by the whole orbit.
    pub corner_ranks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FfOrbits {
    pub lambda: Partition,
    pub field: u8,
    pub matrices: usize,
    pub orbits: Vec<FfOrbit>,
}

impl FfOrbits {
    /// Every orbit holds exactly one 0-1 matrix, every 0-1 matrix of the region
    /// lies in some orbit, and corner ranks separate the orbits.
    pub fn matches_classification(&self, region: &Region) -> bool {
        let reps: BTreeSet<BTreeSet<Cell>> = enumerate_matrices(region)
            .into_iter()
            .map(|a| a.support)
            .collect();
        let seen: BTreeSet<BTreeSet<Cell>> = self
            .orbits
            .iter()
            .flat_map(|o| o.zero_one.iter().cloned())
            .collect();
        let ranks: BTreeSet<&Vec<Vec<usize>>> =
            self.orbits.iter().map(|o| &o.corner_ranks).collect();
        self.orbits.iter().all(|o| o.zero_one.len() == 1)
            && seen == reps
            && ranks.len() == self.orbits.len()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Rank over `F_p` by elimination.
fn rank_mod(mut rows: Vec<Vec<u8>>, p: u8) -> usize {
    let inv = |a: u8| {
        (1..p)
            .find(|&b| (a as u32 * b as u32) % p as u32 == 1)
            .expect("prime field")
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let s = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = ((*x as u32 * s as u32) % p as u32) as u8;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c] as u32;
                for j in 0..cols {
                    rows[i][j] =
                        ((rows[i][j] as u32 + (p as u32 - f) * rows[r][j] as u32) % p as u32) as u8;
                }
            }
        }
        r += 1;
    }
    r
}

/// Orbits of `B_λ` on `M_λ = F_p^{R_λ}` by union-find over the generating
/// operations: scaling a row or column, adding row `i` to row `i' > i` and
/// column `j` to column `j' > j`.
pub fn ff_orbit_oracle(
    lam: &Partition,
    shape: &BoxShape,
    field: u8,
) -> Result<FfOrbits, OracleError> {
    if field != 2 && field != 3 {
        return Err(OracleError::Field(field));
    }
    if shape.flavor() != Flavor::A {
        return Err(OracleError::Flavor);
    }
    let region = Region::new(lam.clone(), *shape)?;
    let cells = region.cells();
    if cells.len() > MAX_CELLS {
        return Err(OracleError::TooLarge {
            lambda: lam.clone(),
            cells: cells.len(),
        });
    }
    let (rows, cols) = (region.rows(), region.cols());
    let p = field as usize;
    let slot: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let total = p.pow(cells.len() as u32);
    let decode = |mut code: usize| -> Vec<Vec<u8>> {
        let mut m = vec![vec![0u8; cols]; rows];
        for &(i, j) in &cells {
            m[i - 1][j - 1] = (code % p) as u8;
            code /= p;
        }
        m
    };
    let encode = |m: &[Vec<u8>]| -> usize {
        cells
            .iter()
            .rev()
            .fold(0, |acc, &(i, j)| acc * p + m[i - 1][j - 1] as usize)
    };
    let mut parent: Vec<usize> = (0..total).collect();
    for code in 0..total {
        let m = decode(code);
        let mut images = vec![];
        for s in 2..p as u8 {
            for i in 0..rows {
                let mut x = m.clone();
                x[i].iter_mut()
                    .for_each(|v| *v = ((*v as usize * s as usize) % p) as u8);
                images.push(x);
            }
            for j in 0..cols {
                let mut x = m.clone();
                x.iter_mut()
                    .for_each(|r| r[j] = ((r[j] as usize * s as usize) % p) as u8);
                images.push(x);
            }
        }
        for a in 0..rows {
            for b in a + 1..rows {
                let mut x = m.clone();
                for j in 0..cols {
                    x[b][j] = ((x[b][j] as usize + m[a][j] as usize) % p) as u8;
                }
                images.push(x);
            }
        }
        for a in 0..cols {
            for b in a + 1..cols {
                let mut x = m.clone();
                for r in x.iter_mut() {
                    r[b] = ((r[b] as usize + r[a] as usize) % p) as u8;
                }
                images.push(x);
            }
        }
        for x in images {
            debug_assert!((0..rows)
                .all(|i| (0..cols).all(|j| x[i][j] == 0 || slot.contains_key(&(i + 1, j + 1)))));
            let (ra, rb) = (find(&mut parent, code), find(&mut parent, encode(&x)));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for code in 0..total {
        let r = find(&mut parent, code);
        groups.entry(r).or_default().push(code);
    }
    let corner = |m: &[Vec<u8>]| -> Vec<Vec<usize>> {
        (1..=rows)
            .map(|a| {
                (1..=cols)
                    .map(|b| rank_mod(m[..a].iter().map(|r| r[..b].to_vec()).collect(), field))
                    .collect()
            })
            .collect()
    };
    let mut orbits = vec![];
    for codes in groups.values() {
        let mats: Vec<Vec<Vec<u8>>> = codes.iter().map(|&c| decode(c)).collect();
        let ranks = corner(&mats[0]);
        if mats.iter().any(|m| corner(m) != ranks) {
            return Err(
                lambda_pairs::Error::Invariant("corner ranks vary along an orbit".into()).into(),
            );
        }
        let zero_one = mats
            .iter()
            .filter(|m| {
                let ones: Vec<Cell> = (0..rows)
                    .flat_map(|i| {
                        (0..cols)
                            .filter(move |&j| m[i][j] != 0)
                            .map(move |j| (i + 1, j + 1))
                    })
                    .collect();
                let binary = m.iter().flatten().all(|&v| v <= 1);
                let rws: BTreeSet<usize> = ones.iter().map(|c| c.0).collect();
                let cls: BTreeSet<usize> = ones.iter().map(|c| c.1).collect();
                binary && rws.len() == ones.len() && cls.len() == ones.len()
            })
            .map(|m| {
                (0..rows)
                    .flat_map(|i| {
                        (0..cols)
                            .filter(move |&j| m[i][j] != 0)
                            .map(move |j| (i + 1, j + 1))
                    })
                    .collect()
            })
            .collect();
        orbits.push(FfOrbit {
            size: codes.len(),
            zero_one,
            corner_ranks: ranks,
        });
    }
    Ok(FfOrbits {
        lambda: lam.clone(),
        field,
        matrices: total,
        orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let b: BoxShape = "A2x2".parse().unwrap();
        let e = Partition::empty();
        let o = ff_orbit_oracle(&e, &b, 2).unwrap();
        assert_eq!(o.orbits.len(), 7);
        assert_eq!(o.matrices, 16);
        assert!(o.matches_classification(&Region::new(e.clone(), b).unwrap()));
        assert_eq!(o.orbits[0].size, 1);
        assert!(o.orbits[0].zero_one[0].is_empty());
        let one: Partition = "1".parse().unwrap();
        let o = ff_orbit_oracle(&one, &b, 3).unwrap();
        assert_eq!(
            o.orbits.len(),
            enumerate_matrices(&Region::new(one.clone(), b).unwrap()).len()
        );
        assert!(matches!(
            ff_orbit_oracle(&one, &b, 5),
            Err(OracleError::Field(5))
        ));
        assert!(matches!(
            ff_orbit_oracle(&e, &"A3x4".parse().unwrap(), 2),
            Err(OracleError::TooLarge { .. })
        ));
    }
}
