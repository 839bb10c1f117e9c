//! Colour counts and bounds for graph classes with bounded maximum average
//! degree: earth-moon graphs, bounded thickness, bounded `g`-thickness, and
//! bounded stack- or queue-number.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::BoundKind;
use crate::sparsity::Density;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "class")]
pub enum PresetClass {
    EarthMoonDefective,
    EarthMoonClustered,
    Thickness { t: usize },
    GThickness { t: usize, g: usize },
    Stack { k: usize },
    Queue { k: usize },
}

/// Which solver realises a row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "solver")]
pub enum SolverRef {
    /// `choose_defective` with this target defect.
    Defective { d: usize, n0: usize },
    /// `choose_clustered_mad7_10`.
    Mad7_10,
    /// `choose_clustered_extension`.
    Extension { n0: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresetRow {
    pub colours: usize,
    pub kind: BoundKind,
    pub bound: usize,
    pub solver: SolverRef,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Preset {
    pub class: PresetClass,
    /// Every graph in the class has `mad(G, n0)` strictly below this.
    pub mad_below: Density,
    pub n0: usize,
    pub rows: Vec<PresetRow>,
}

fn row(colours: usize, kind: BoundKind, bound: usize, solver: SolverRef) -> PresetRow {
    PresetRow {
        colours,
        kind,
        bound,
        solver,
    }
}

/// Defect 1 gives clustering 2.
fn defect_one(colours: usize, kind: BoundKind) -> PresetRow {
    let bound = if kind == BoundKind::Defect { 1 } else { 2 };
    row(colours, kind, bound, SolverRef::Defective { d: 1, n0: 1 })
}

pub fn preset_bounds(class: PresetClass) -> Result<Preset> {
    use BoundKind::{Clustering, Defect};
    let positive = |x: usize, name: &str| {
        if x == 0 {
            Err(Error::InvalidSpec(format!("{name} must be at least 1")))
        } else {
            Ok(x)
        }
    };
    let ext = SolverRef::Extension { n0: 1 };
    let preset = match class {
        PresetClass::EarthMoonDefective => Preset {
            class,
            mad_below: Density::new(12, 1),
            n0: 1,
            rows: [(7, 6), (8, 3), (9, 2), (11, 1)]
                .into_iter()
                .map(|(k, d)| row(k, Defect, d, SolverRef::Defective { d, n0: 1 }))
                .collect(),
        },
        PresetClass::EarthMoonClustered => Preset {
            class,
            mad_below: Density::new(12, 1),
            n0: 1,
            rows: vec![defect_one(9, Clustering), row(8, Clustering, 405, ext)],
        },
        PresetClass::Thickness { t } => {
            let t = positive(t, "t")?;
            Preset {
                class,
                mad_below: Density::new(6 * t as u64, 1),
                n0: 1,
                rows: vec![
                    defect_one((9 * t).div_ceil(2), Clustering),
                    row((21 * t).div_ceil(5), Clustering, 9, SolverRef::Mad7_10),
                    row(4 * t, Clustering, 228 * t - 51, ext),
                ],
            }
        }
        PresetClass::GThickness { t, g } => {
            let t = positive(t, "t")?;
            let (t, g) = (t as i64, g as i64);
            let n0 = (4 * t * g - 8 * t + 1).max(1) as usize;
            let spread = (4 * t * g - 8 * t).div_euclid(4 * t + 1)
                + i64::from((4 * t * g - 8 * t).rem_euclid(4 * t + 1) != 0);
            let bound = spread.max(228 * t + 6) as usize;
            Preset {
                class,
                mad_below: Density::new((12 * t + 3) as u64, 2),
                n0,
                rows: vec![row(
                    (4 * t + 1) as usize,
                    Clustering,
                    bound,
                    SolverRef::Extension { n0 },
                )],
            }
        }
        PresetClass::Stack { k } => {
            let k = positive(k, "k")?;
            Preset {
                class,
                mad_below: Density::new(2 * k as u64 + 2, 1),
                n0: 1,
                rows: vec![
                    defect_one((3 * k + 4) / 2, Defect),
                    row((7 * k + 11) / 5, Clustering, 9, SolverRef::Mad7_10),
                    row((4 * k + 6) / 3, Clustering, 76 * k + 53, ext),
                ],
            }
        }
        PresetClass::Queue { k } => {
            let k = positive(k, "k")?;
            Preset {
                class,
                mad_below: Density::new(4 * k as u64, 1),
                n0: 1,
                rows: vec![
                    defect_one(3 * k, Defect),
                    row((14 * k).div_ceil(5), Clustering, 9, SolverRef::Mad7_10),
                    row((8 * k).div_ceil(3), Clustering, 152 * k - 13, ext),
                ],
            }
        }
    };
    Ok(preset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundKind::{Clustering, Defect};

    fn triples(p: &Preset) -> Vec<(usize, BoundKind, usize)> {
        p.rows
            .iter()
            .map(|r| (r.colours, r.kind, r.bound))
            .collect()
    }

    #[test]
    fn earth_moon_rows() {
        let p = preset_bounds(PresetClass::EarthMoonClustered).unwrap();
        assert_eq!(triples(&p), vec![(9, Clustering, 2), (8, Clustering, 405)]);
        let p = preset_bounds(PresetClass::EarthMoonDefective).unwrap();
        assert_eq!(
            triples(&p),
            vec![
                (7, Defect, 6),
                (8, Defect, 3),
                (9, Defect, 2),
                (11, Defect, 1)
            ]
        );
    }

    #[test]
    fn thickness_golden() {
        let expect = [
            (1, [5, 5, 4], 177),
            (2, [9, 9, 8], 405),
            (3, [14, 13, 12], 633),
            (4, [18, 17, 16], 861),
        ];
        for (t, colours, big) in expect {
            let p = preset_bounds(PresetClass::Thickness { t }).unwrap();
            assert_eq!(
                triples(&p),
                vec![
                    (colours[0], Clustering, 2),
                    (colours[1], Clustering, 9),
                    (colours[2], Clustering, big)
                ]
            );
        }
    }

    #[test]
    fn g_thickness_golden() {
        // (t, g) -> (colours, bound, n0)
        let expect = [
            ((1, 0), (5, 234, 1)),
            ((1, 1), (5, 234, 1)),
            ((1, 2), (5, 234, 1)),
            ((2, 2), (9, 462, 1)),
            ((1, 300), (5, 239, 1193)),
            ((3, 0), (13, 690, 1)),
            ((4, 2), (17, 918, 1)),
        ];
        for ((t, g), (colours, bound, n0)) in expect {
            let p = preset_bounds(PresetClass::GThickness { t, g }).unwrap();
            assert_eq!(
                triples(&p),
                vec![(colours, Clustering, bound)],
                "t={t} g={g}"
            );
            assert_eq!(p.n0, n0);
        }
    }

    #[test]
    fn stack_and_queue_golden() {
        let stack = [
            (1, [3, 3, 3], 129),
            (2, [5, 5, 4], 205),
            (3, [6, 6, 6], 281),
            (4, [8, 7, 7], 357),
        ];
        for (k, c, big) in stack {
            let p = preset_bounds(PresetClass::Stack { k }).unwrap();
            assert_eq!(
                triples(&p),
                vec![
                    (c[0], Defect, 1),
                    (c[1], Clustering, 9),
                    (c[2], Clustering, big)
                ]
            );
        }
        let queue = [
            (1, [3, 3, 3], 139),
            (2, [6, 6, 6], 291),
            (3, [9, 9, 8], 443),
            (4, [12, 12, 11], 595),
        ];
        for (k, c, big) in queue {
            let p = preset_bounds(PresetClass::Queue { k }).unwrap();
            assert_eq!(
                triples(&p),
                vec![
                    (c[0], Defect, 1),
                    (c[1], Clustering, 9),
                    (c[2], Clustering, big)
                ]
            );
        }
    }

    #[test]
    fn every_row_is_backed_by_its_solver_hypothesis() {
        // The solver behind each row needs mad below a threshold depending
        // on the colour count; the class bound must not exceed it.
        let classes = (1..=4)
            .flat_map(|x| {
                [
                    PresetClass::Thickness { t: x },
                    PresetClass::Stack { k: x },
                    PresetClass::Queue { k: x },
                    PresetClass::GThickness { t: x, g: x - 1 },
                ]
            })
            .chain([
                PresetClass::EarthMoonDefective,
                PresetClass::EarthMoonClustered,
            ]);
        let mut below_solver = Vec::new();
        for class in classes {
            let p = preset_bounds(class).unwrap();
            for r in &p.rows {
                let k = r.colours as u64;
                let threshold = match r.solver {
                    SolverRef::Defective { d, .. } => {
                        Density::new(2 * k * (d as u64 + 1), d as u64 + 2)
                    }
                    SolverRef::Mad7_10 => Density::new(10 * k, 7),
                    SolverRef::Extension { n0 } => {
                        if r.bound < (n0 - 1).div_ceil(r.colours).max(57 * r.colours - 51) {
                            below_solver.push(class);
                        }
                        Density::new(3 * k, 2)
                    }
                };
                assert!(p.mad_below <= threshold, "{class:?} row {r:?}");
            }
        }
        // The stated 76k + 53 for k = 3 is below the extension guarantee
        // 57 * 6 - 51 = 291 for six colours.
        assert_eq!(below_solver, vec![PresetClass::Stack { k: 3 }]);
    }

    #[test]
    fn zero_parameters_rejected() {
        assert!(preset_bounds(PresetClass::Thickness { t: 0 }).is_err());
        assert!(preset_bounds(PresetClass::Stack { k: 0 }).is_err());
    }
}
