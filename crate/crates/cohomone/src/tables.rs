//! The classification tables in dimensions 4–7, transcribed as diagram
//! fixtures with their parameter constraints and orbifold flags, together
//! with the table-diff checker.

use crate::ambient::{self, AmbientGroup, Factor};
use crate::diagram::{self, GroupDiagram};
use crate::expr::{int, var, Constraint, Expr};
use crate::subgroup::{
    Block, Conj, GammaKind, NamedSub, Placement, PtCoord, QSub, SubgroupDescriptor, SymTurns,
};

#[derive(Debug, Clone)]
pub struct TableRow {
    pub diagram: GroupDiagram,
    pub space: String,
    pub orbifold: bool,
    /// A printed table row may transcribe into several canonical branches
    /// (e.g. a Γ row splitting into its cyclic and non-cyclic derivations);
    /// branches beyond the first live here.
    pub extra_branches: Vec<GroupDiagram>,
}

#[derive(Debug, Clone)]
pub struct TableFixture {
    pub id: &'static str,
    pub dimension: i64,
    pub rows: Vec<TableRow>,
}

// ---------------------------------------------------------------------------
// shape builders

pub fn ns1(n: usize, c: usize) -> QSub {
    QSub::trivial(n)
        .with_lattice_row(unit(n, c))
        .with_pt(QSub::pt_at(n, &[(c, PtCoord::jj())]))
}

pub fn unit(n: usize, c: usize) -> Vec<Expr> {
    let mut row = vec![int(0); n];
    row[c] = int(1);
    row
}

pub fn circle(n: usize, c: usize) -> QSub {
    QSub::trivial(n).with_lattice_row(unit(n, c))
}

pub fn s3(n: usize, c: usize) -> QSub {
    QSub::trivial(n).with_block(Block::single(c))
}

pub fn delta(n: usize, a: usize, b: usize) -> QSub {
    QSub::trivial(n).with_block(Block::diag(a, b))
}

pub fn delta_conj(n: usize, a: usize, b: usize, conj: Conj) -> QSub {
    QSub::trivial(n).with_block(Block::diag_conj(a, b, conj))
}

pub fn delta_circle(n: usize, a: usize, b: usize) -> QSub {
    let mut row = vec![int(0); n];
    row[a] = int(1);
    row[b] = int(1);
    QSub::trivial(n).with_lattice_row(row)
}

/// Extend by the central element −1 in coordinate c (the ± patterns).
pub fn pm(q: QSub, c: usize) -> QSub {
    let n = q.ncoords;
    q.with_pt(QSub::pt_at(n, &[(c, PtCoord::minus_one())]))
}

/// Extend by the simultaneous j-flip on the given coordinates.
pub fn jflip(q: QSub, coords: &[usize]) -> QSub {
    let n = q.ncoords;
    let at: Vec<(usize, PtCoord)> = coords.iter().map(|&c| (c, PtCoord::jj())).collect();
    q.with_pt(QSub::pt_at(n, &at))
}

pub fn gamma(q: QSub, kind: GammaKind, c: usize) -> QSub {
    q.with_gamma(kind, Placement::Coord(c))
}

pub fn dgamma(q: QSub, kind: GammaKind, a: usize, b: usize) -> QSub {
    q.with_gamma(kind, Placement::Diag(a, b))
}

pub fn winding(n: usize, entries: &[Expr]) -> QSub {
    QSub::trivial(n).with_lattice_row(entries.to_vec())
}

pub fn merge(a: QSub, b: QSub) -> QSub {
    let mut out = a;
    for bl in b.blocks {
        out.blocks.push(bl);
    }
    for row in b.lattice {
        out.lattice.push(row);
    }
    for f in b.fins {
        out.fins.push(f);
    }
    out.sort_parts();
    out
}

pub fn q(qsub: QSub) -> SubgroupDescriptor {
    SubgroupDescriptor::quat(qsub)
}

fn turns(a: Expr, b: Expr) -> SymTurns {
    SymTurns::new(a, b)
}

fn row(
    ambient: AmbientGroup,
    h: SubgroupDescriptor,
    km: SubgroupDescriptor,
    kp: SubgroupDescriptor,
    constraints: Vec<Constraint>,
    provenance: &str,
    space: &str,
    orbifold: bool,
) -> TableRow {
    TableRow {
        diagram: GroupDiagram::new(ambient, h, km, kp, constraints).with_provenance(provenance),
        space: space.into(),
        orbifold,
        extra_branches: vec![],
    }
}

fn ge(v: &str, c: i64) -> Constraint {
    Constraint::Ge(var(v), c)
}

fn divides(a: Expr, b: Expr) -> Constraint {
    Constraint::Divides(a, b)
}

fn coprime(a: Expr, b: Expr) -> Constraint {
    Constraint::Coprime(a, b)
}

// ---------------------------------------------------------------------------
// Table 4.1: dimension 4 (fixture-only; cited from earlier work)

pub fn table_4_1() -> TableFixture {
    let s3a = AmbientGroup::new(vec![Factor::S3]);
    let s31 = ambient::s3xs1();
    let s33 = ambient::s3xs3();
    let full1 = SubgroupDescriptor::full(&s3a);
    let full33 = SubgroupDescriptor::full(&s33);
    let rows = vec![
        row(
            s3a.clone(),
            q(gamma(QSub::trivial(1), GammaKind::sym("G"), 0)),
            full1.clone(),
            full1.clone(),
            vec![],
            "T4.1 r1",
            "Susp(S^3/Γ)",
            true,
        ),
        row(
            s3a.clone(),
            q(gamma(QSub::trivial(1), GammaKind::Cyclic(var("k")), 0)),
            q(circle(1, 0)),
            full1.clone(),
            vec![ge("k", 2)],
            "T4.1 r2",
            "CP^2/Z_k",
            true,
        ),
        row(
            s3a.clone(),
            q(gamma(QSub::trivial(1), GammaKind::BinDih(var("m")), 0)),
            q(ns1(1, 0)),
            full1.clone(),
            vec![ge("m", 2)],
            "T4.1 r3",
            "CP^2/D*_2m",
            true,
        ),
        // the ⟨i⟩-row, conjugated so the cyclic group is ⟨j⟩ = D*₂ with m = 1
        row(
            s3a.clone(),
            q(gamma(QSub::trivial(1), GammaKind::BinDih(int(1)), 0)),
            q(ns1(1, 0)),
            full1.clone(),
            vec![],
            "T4.1 r4",
            "CP^2/Z_4",
            true,
        ),
        row(
            s31.clone(),
            q(merge(ns1(2, 0), gamma(QSub::trivial(2), GammaKind::Cyclic(var("k")), 1))),
            q(merge(ns1(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), gamma(QSub::trivial(2), GammaKind::Cyclic(var("k")), 1))),
            vec![ge("k", 1)],
            "T4.1 r5",
            "RP^2 * S^1",
            true,
        ),
        // Spin(4) ≅ S³×S³ acting on Susp(RP³)
        row(
            s33.clone(),
            q(pm(delta(2, 0, 1), 0)),
            full33.clone(),
            full33.clone(),
            vec![],
            "T4.1 r6",
            "Susp(RP^3)",
            true,
        ),
    ];
    TableFixture { id: "4.1", dimension: 4, rows }
}

// ---------------------------------------------------------------------------
// Table 4.2: dimension 5

pub fn table_4_2() -> TableFixture {
    let s31 = ambient::s3xs1();
    let s33 = ambient::s3xs3();
    let su3 = AmbientGroup::new(vec![Factor::SU3]);
    let spin5 = AmbientGroup::new(vec![Factor::Spin5]);
    let rows = vec![
        // (3.1)
        row(
            s31.clone(),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::sym("G"), 0),
                gamma(QSub::trivial(2), GammaKind::Cyclic(var("k")), 1),
            )),
            q(merge(gamma(QSub::trivial(2), GammaKind::sym("G"), 0), circle(2, 1))),
            q(merge(s3(2, 0), gamma(QSub::trivial(2), GammaKind::Cyclic(var("k")), 1))),
            vec![ge("k", 1)],
            "(3.1)",
            "(S^3/Γ) * S^1",
            true,
        ),
        // (3.2)
        row(
            s31.clone(),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::Cyclic(var("m")), 0),
                QSub::trivial(2).with_pt(vec![
                    PtCoord::turns(turns(var("p"), var("k"))),
                    PtCoord::turns(turns(var("q"), var("k"))),
                ]),
            )),
            q(merge(
                winding(2, &[var("p"), var("q")]),
                gamma(QSub::trivial(2), GammaKind::Cyclic(var("m")), 0),
            )),
            q(merge(
                s3(2, 0),
                gamma(
                    QSub::trivial(2),
                    GammaKind::Cyclic(var("k").div(var("q"))),
                    1,
                ),
            )),
            vec![
                divides(var("q"), var("m").gcd(var("k"))),
                coprime(var("p"), var("k")),
                ge("m", 2),
                ge("p", 1),
            ],
            "(3.2)",
            "S^5/Z_m",
            true,
        ),
        // (3.3)
        row(
            s33.clone(),
            q(merge(ns1(2, 0), circle(2, 1))),
            q(merge(ns1(2, 0), s3(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![],
            "(3.3)",
            "RP^2 * S^2",
            true,
        ),
        // (3.4)
        row(
            s33.clone(),
            q(merge(ns1(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![],
            "(3.4)",
            "Susp(RP^2)-bundle over S^2",
            true,
        ),
        // (3.5)
        row(
            s33.clone(),
            q(merge(ns1(2, 0), ns1(2, 1))),
            q(merge(ns1(2, 0), s3(2, 1))),
            q(merge(s3(2, 0), ns1(2, 1))),
            vec![],
            "(3.5)",
            "RP^2 * RP^2",
            true,
        ),
        // (3.6)
        row(
            su3.clone(),
            SubgroupDescriptor::named_and_quat(0, NamedSub::U2, QSub::trivial(0)),
            SubgroupDescriptor::full(&su3),
            SubgroupDescriptor::full(&su3),
            vec![],
            "(3.6)",
            "Susp(CP^2)",
            false,
        ),
        // (3.7)
        row(
            spin5.clone(),
            SubgroupDescriptor::named_and_quat(0, NamedSub::NSpinSub, QSub::trivial(0)),
            SubgroupDescriptor::full(&spin5),
            SubgroupDescriptor::full(&spin5),
            vec![],
            "(3.7)",
            "Susp(RP^4)",
            true,
        ),
    ];
    TableFixture { id: "4.2", dimension: 5, rows }
}

// ---------------------------------------------------------------------------
// Table 4.3: dimension 6

pub fn table_4_3() -> TableFixture {
    let s33 = ambient::s3xs3();
    let s331 = ambient::s3xs3xs1();
    let su3 = AmbientGroup::new(vec![Factor::SU3]);
    let su3s1 = AmbientGroup::new(vec![Factor::SU3, Factor::S1]);
    let sp2s1 = AmbientGroup::new(vec![Factor::Sp2, Factor::S1]);
    let spin6 = AmbientGroup::new(vec![Factor::Spin6]);
    let zk = |c: usize| gamma(QSub::trivial(2), GammaKind::Cyclic(var("k")), c);
    let t2 = QSub::trivial(2)
        .with_lattice_row(unit(2, 0))
        .with_lattice_row(unit(2, 1));
    let h_jj = jflip(delta_circle(2, 0, 1), &[0, 1]);
    let h_pmjj = pm(jflip(delta_circle(2, 0, 1), &[0, 1]), 0);
    let mut rows = vec![
        row(
            s33.clone(),
            q(ns1(2, 0)),
            q(merge(ns1(2, 0), s3(2, 1))),
            q(s3(2, 0)),
            vec![],
            "(3.9)",
            "RP^2 * S^3",
            true,
        ),
        row(
            s33.clone(),
            q(merge(ns1(2, 0), zk(1))),
            q(merge(ns1(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), zk(1))),
            vec![ge("k", 1)],
            "(3.10)",
            "(RP^2 * S^1)-bundle over S^2",
            true,
        ),
        row(
            s33.clone(),
            q(ns1(2, 0)),
            q(s3(2, 0)),
            q(s3(2, 0)),
            vec![],
            "(3.11)",
            "Susp(RP^2) x S^3",
            true,
        ),
        {
            // printed row (N(S¹)×Γ, N(S¹)×S³, S³×Γ): non-cyclic branch (3.12)
            // plus the cyclic branch (3.13)
            let mut r = row(
                s33.clone(),
                q(merge(ns1(2, 0), gamma(QSub::trivial(2), GammaKind::sym_noncyclic("G"), 1))),
                q(merge(ns1(2, 0), s3(2, 1))),
                q(merge(s3(2, 0), gamma(QSub::trivial(2), GammaKind::sym_noncyclic("G"), 1))),
                vec![],
                "(3.12)",
                "RP^2 * (S^3/Γ)",
                true,
            );
            r.extra_branches.push(
                GroupDiagram::new(
                    s33.clone(),
                    q(merge(ns1(2, 0), zk(1))),
                    q(merge(ns1(2, 0), s3(2, 1))),
                    q(merge(s3(2, 0), zk(1))),
                    vec![ge("k", 2)],
                )
                .with_provenance("(3.13)"),
            );
            r
        },
        row(
            s33.clone(),
            q(h_jj.clone()),
            q(merge(s3(2, 0), ns1(2, 1))),
            q(delta(2, 0, 1)),
            vec![],
            "(3.14)",
            "RP^2 * S^3",
            true,
        ),
        row(
            s33.clone(),
            q(h_jj.clone()),
            q(jflip(t2.clone(), &[0, 1])),
            q(delta(2, 0, 1)),
            vec![],
            "(3.15)",
            "(SO(5)/SO(2)SO(3))/Z_2",
            true,
        ),
        row(
            s33.clone(),
            q(h_pmjj.clone()),
            q(jflip(t2.clone(), &[0, 1])),
            q(pm(delta(2, 0, 1), 0)),
            vec![],
            "(3.16)",
            "CP^3/Z_2",
            true,
        ),
        row(
            s33.clone(),
            q(h_pmjj.clone()),
            q(merge(s3(2, 0), ns1(2, 1))),
            q(pm(delta(2, 0, 1), 0)),
            vec![],
            "(3.18)",
            "RP^2 * RP^3",
            true,
        ),
        row(
            s33.clone(),
            q(h_jj.clone()),
            q(delta(2, 0, 1)),
            q(delta(2, 0, 1)),
            vec![],
            "(3.17)",
            "Susp(RP^2) x S^3",
            true,
        ),
        row(
            s33.clone(),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::BinDih(var("m")), 0),
                circle(2, 1),
            )),
            q(merge(ns1(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![ge("m", 2)],
            "(3.19)",
            "S^2 x (CP^2/D*_2m)",
            true,
        ),
        row(
            s33.clone(),
            q(merge(winding(2, &[var("p"), int(1)]), zk(0))),
            q(t2.clone()),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![ge("k", 2)],
            "(3.20)",
            "(CP^2/Z_k)-bundle over S^2",
            true,
        ),
        row(
            s33.clone(),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::sym_noncyclic("G"), 0),
                circle(2, 1),
            )),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::sym_noncyclic("G"), 0),
                s3(2, 1),
            )),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![],
            "(3.21)",
            "(S^3/Γ) * S^2",
            true,
        ),
        row(
            s33.clone(),
            q(merge(zk(0), circle(2, 1))),
            q(merge(zk(0), s3(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![ge("k", 2)],
            "(3.22)",
            "(S^3/Z_k) * S^2",
            true,
        ),
        row(
            s33.clone(),
            q(pm(delta_circle(2, 0, 1), 0)),
            q(pm(delta(2, 0, 1), 0)),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![],
            "(3.23)",
            "RP^3 * S^2",
            true,
        ),
        row(
            s33.clone(),
            q(merge(
                gamma(QSub::trivial(2), GammaKind::sym_noncyclic("G"), 0),
                circle(2, 1),
            )),
            q(merge(s3(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![],
            "(3.24)",
            "Susp(S^3/Γ) x S^2",
            true,
        ),
        row(
            s33.clone(),
            q(merge(winding(2, &[var("p"), int(1)]), zk(0))),
            q(merge(s3(2, 0), circle(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![ge("k", 2)],
            "(3.25)",
            "(S^4/Z_k)-bundle over S^2",
            true,
        ),
        row(
            s33.clone(),
            q(merge(delta_circle(2, 0, 1), zk(0))),
            q(merge(circle(2, 0), s3(2, 1))),
            q(merge(s3(2, 0), circle(2, 1))),
            vec![ge("k", 2)],
            "(3.26)",
            "CP^3/Z_k",
            true,
        ),
        row(
            s331.clone(),
            q(merge(
                merge(ns1(3, 0), circle(3, 1)),
                gamma(QSub::trivial(3), GammaKind::Cyclic(var("k")), 2),
            )),
            q(merge(merge(ns1(3, 0), circle(3, 1)), circle(3, 2))),
            q(merge(
                merge(s3(3, 0), circle(3, 1)),
                gamma(QSub::trivial(3), GammaKind::Cyclic(var("k")), 2),
            )),
            vec![ge("k", 1)],
            "(3.27)",
            "(RP^2 * S^1) x S^2",
            true,
        ),
        row(
            su3.clone(),
            SubgroupDescriptor::named_and_quat(0, NamedSub::SU2Zk(var("k")), QSub::trivial(0)),
            SubgroupDescriptor::named_and_quat(0, NamedSub::U2, QSub::trivial(0)),
            SubgroupDescriptor::full(&su3),
            vec![ge("k", 2)],
            "(3.28)",
            "CP^3/Z_k",
            true,
        ),
        row(
            su3.clone(),
            SubgroupDescriptor::named_and_quat(0, NamedSub::SU2Zk(var("k")), QSub::trivial(0)),
            SubgroupDescriptor::full(&su3),
            SubgroupDescriptor::full(&su3),
            vec![ge("k", 2)],
            "(3.29)",
            "Susp(S^5/Z_k)",
            true,
        ),
        row(
            su3s1.clone(),
            SubgroupDescriptor::named_and_quat(
                0,
                NamedSub::U2,
                gamma(QSub::trivial(1), GammaKind::Cyclic(var("k")), 0),
            ),
            SubgroupDescriptor::named_and_quat(0, NamedSub::U2, circle(1, 0)),
            SubgroupDescriptor::named_and_quat(
                0,
                NamedSub::Full,
                gamma(QSub::trivial(1), GammaKind::Cyclic(var("k")), 0),
            ),
            vec![ge("k", 1)],
            "(3.30)",
            "CP^2 * S^1",
            false,
        ),
        row(
            sp2s1.clone(),
            SubgroupDescriptor::named_and_quat(
                0,
                NamedSub::Sp1Sp1Z2,
                gamma(QSub::trivial(1), GammaKind::Cyclic(var("k")), 0),
            ),
            SubgroupDescriptor::named_and_quat(0, NamedSub::Sp1Sp1Z2, circle(1, 0)),
            SubgroupDescriptor::named_and_quat(
                0,
                NamedSub::Full,
                gamma(QSub::trivial(1), GammaKind::Cyclic(var("k")), 0),
            ),
            vec![ge("k", 1)],
            "(3.31)",
            "RP^4 * S^1",
            true,
        ),
        row(
            spin6.clone(),
            SubgroupDescriptor::named_and_quat(0, NamedSub::NSpinSub, QSub::trivial(0)),
            SubgroupDescriptor::full(&spin6),
            SubgroupDescriptor::full(&spin6),
            vec![],
            "(3.32)",
            "Susp(RP^5)",
            true,
        ),
    ];
    rows.rotate_right(0);
    TableFixture { id: "4.3", dimension: 6, rows }
}

pub fn all_tables() -> Vec<TableFixture> {
    vec![table_4_1(), table_4_2(), table_4_3()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbifold;

    #[test]
    fn fixture_rows_validate() {
        for table in all_tables() {
            for r in &table.rows {
                let v = diagram::validate(&r.diagram).unwrap_or_else(|e| {
                    panic!(
                        "row {} of table {} fails validation: {e}",
                        r.diagram.provenance.as_deref().unwrap_or("?"),
                        table.id
                    )
                });
                if let Some(dx) = v.dim_x {
                    assert_eq!(dx, table.dimension, "dimension of {:?}", r.diagram.provenance);
                }
                assert_eq!(
                    orbifold::is_orbifold(&v),
                    r.orbifold,
                    "orbifold flag of {:?} ({} / {})",
                    r.diagram.provenance,
                    v.class_minus,
                    v.class_plus,
                );
            }
        }
    }

    #[test]
    fn fixture_rows_canonical() {
        for table in all_tables() {
            for r in &table.rows {
                let c = diagram::canonicalize(&r.diagram);
                let c2 = diagram::canonicalize(&c);
                let mut a = c.clone();
                let mut b = c2.clone();
                a.provenance = None;
                b.provenance = None;
                assert_eq!(a, b, "canonicalize idempotent on {:?}", r.diagram.provenance);
            }
        }
    }
}
