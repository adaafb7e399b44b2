//! Isomorphism classes of mixing-type sub-seeds and their correspondence
//! with regular D-classes of `End_par`.
//!
//! The two sides are computed independently: iso-classes from isomorphism
//! search alone, D-classes from the semigroup table. The report joins them
//! and verifies the join is a bijection.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::green::{green_relations, regular_d_classes, GreenPartition};
use crate::hom::{automorphism_group, find_seed_iso, mixing_subseed, HomError, SubSeedSpec};
use crate::seed::Seed;
use crate::semigroup::{enumerate_endpar, SemigroupError, SemigroupTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error("theorem violation: {0}")]
    Bijection(String),
}

/// `b_{xy} = 0` for every remaining exchangeable `x` and deleted `y`.
pub fn is_subalgebra_type(seed: &Seed, spec: &SubSeedSpec) -> bool {
    let zero = 0.into();
    spec.dom_ex(seed).iter().all(|x| spec.i1().iter().all(|y| seed.b(x, y) == &zero))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoClass {
    pub representative: SubSeedSpec,
    pub members: Vec<SubSeedSpec>,
}

type Invariant = (usize, usize, Vec<(bool, Vec<u64>, Vec<u64>)>);

/// Cheap isomorphism invariant: shape plus sorted per-variable signatures.
fn invariant(seed: &Seed) -> Invariant {
    let abs = |x: usize, y: usize| seed.b(x, y).magnitude().iter_u64_digits().next().unwrap_or(0);
    let mut sigs: Vec<_> = (0..seed.len())
        .map(|v| {
            let mut row: Vec<u64> = if v < seed.n() {
                (0..seed.len()).map(|y| abs(v, y)).filter(|&a| a != 0).collect()
            } else {
                Vec::new()
            };
            let mut col: Vec<u64> = (0..seed.n()).map(|x| abs(x, v)).filter(|&a| a != 0).collect();
            row.sort_unstable();
            col.sort_unstable();
            (v < seed.n(), row, col)
        })
        .collect();
    sigs.sort();
    (seed.n(), seed.m(), sigs)
}

/// All valid specs grouped by isomorphism of their sub-seeds. Classes and
/// members are sorted; each representative is the least member.
pub fn iso_classes_of_subseeds(seed: &Seed) -> Result<Vec<IsoClass>, ClassifyError> {
    let specs = SubSeedSpec::all(seed)?;
    let subseeds: Vec<Arc<Seed>> = specs.iter().map(|s| Arc::new(mixing_subseed(seed, s))).collect();
    let invariants: Vec<_> = subseeds.iter().map(|s| invariant(s)).collect();
    let mut reps: Vec<usize> = Vec::new();
    let mut classes: Vec<Vec<SubSeedSpec>> = Vec::new();
    for i in 0..specs.len() {
        let mut target = None;
        for (c, &r) in reps.iter().enumerate() {
            if invariants[r] == invariants[i] && find_seed_iso(&subseeds[r], &subseeds[i])?.is_some() {
                target = Some(c);
                break;
            }
        }
        match target {
            Some(c) => classes[c].push(specs[i]),
            None => {
                reps.push(i);
                classes.push(vec![specs[i]]);
            }
        }
    }
    let mut out: Vec<IsoClass> = classes
        .into_iter()
        .map(|mut members| {
            members.sort();
            IsoClass { representative: members[0], members }
        })
        .collect();
    out.sort_by_key(|c| c.representative);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRow {
    pub class: IsoClass,
    pub subalgebra_type: bool,
    pub d_class: usize,
    pub h_group_order: usize,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub rows: Vec<ClassRow>,
    pub elements: usize,
    pub d_classes: usize,
    pub regular_d_classes: usize,
    /// One flag per spec in `SubSeedSpec::all` order.
    pub subalgebra_flags: Vec<(SubSeedSpec, bool)>,
}

impl ClassificationReport {
    pub fn iso_class_count(&self) -> usize {
        self.rows.len()
    }
}

/// Joins sub-seed iso-classes with the regular D-classes of `table` through
/// `[spec] -> D-class of id_spec`, verifying the map is well defined,
/// injective and onto the regular D-classes.
pub fn verify_correspondence(
    table: &SemigroupTable,
    partition: &GreenPartition,
    classes: Vec<IsoClass>,
) -> Result<ClassificationReport, ClassifyError> {
    let seed = table.seed();
    let regular = regular_d_classes(table, partition)?;
    let mut rows: Vec<ClassRow> = Vec::with_capacity(classes.len());
    for class in classes {
        let d_of = |s: &SubSeedSpec| partition.d.class_of(table.identity_index(s));
        let d_class = d_of(&class.representative);
        if let Some(bad) = class.members.iter().find(|m| d_of(m) != d_class) {
            return Err(ClassifyError::Bijection(format!(
                "isomorphic sub-seeds {} and {} give identity inclusions in different D-classes",
                spec_label(seed, &class.representative),
                spec_label(seed, bad)
            )));
        }
        if let Some(prev) = rows.iter().find(|r| r.d_class == d_class) {
            return Err(ClassifyError::Bijection(format!(
                "non-isomorphic sub-seeds {} and {} give identity inclusions in the same D-class",
                spec_label(seed, &prev.class.representative),
                spec_label(seed, &class.representative)
            )));
        }
        let e = table.identity_index(&class.representative);
        let h_group_order = partition.h.class(partition.h.class_of(e)).len();
        let subalgebra_type = is_subalgebra_type(seed, &class.representative);
        rows.push(ClassRow { class, subalgebra_type, d_class, h_group_order });
    }
    for r in &regular {
        if !rows.iter().any(|row| row.d_class == r.d_class) {
            return Err(ClassifyError::Bijection(format!("regular D-class {} has no sub-seed class", r.d_class)));
        }
    }
    let subalgebra_flags =
        SubSeedSpec::all(seed)?.into_iter().map(|s| (s, is_subalgebra_type(seed, &s))).collect();
    Ok(ClassificationReport {
        rows,
        elements: table.len(),
        d_classes: partition.d.num_classes(),
        regular_d_classes: regular.len(),
        subalgebra_flags,
    })
}

/// Full pipeline: iso-classes, `End_par` with at most `cap` elements, Green's
/// relations, and the verified correspondence. H-group orders are also
/// compared with automorphism group orders.
pub fn theorem_number_report(seed: &Arc<Seed>, cap: usize) -> Result<ClassificationReport, ClassifyError> {
    let classes = iso_classes_of_subseeds(seed)?;
    let table = enumerate_endpar(seed, cap)?;
    let partition = green_relations(&table)?;
    let report = verify_correspondence(&table, &partition, classes)?;
    for row in &report.rows {
        let aut = automorphism_group(&Arc::new(mixing_subseed(seed, &row.class.representative)))?.len();
        if aut != row.h_group_order {
            return Err(ClassifyError::Bijection(format!(
                "H-class of {} has order {} but the sub-seed has {aut} automorphisms",
                spec_label(seed, &row.class.representative),
                row.h_group_order
            )));
        }
    }
    Ok(report)
}

/// `(I0={..}, I1={..})` with labels.
pub fn spec_label(seed: &Seed, spec: &SubSeedSpec) -> String {
    let (i0, i1) = spec.labels(seed);
    format!("(I0={{{}}}, I1={{{}}})", i0.join(","), i1.join(","))
}

/// Displays a report as an aligned text table.
pub struct ReportTable<'a> {
    pub seed: &'a Seed,
    pub report: &'a ClassificationReport,
}

impl fmt::Display for ReportTable<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.report;
        writeln!(
            f,
            "{} elements, {} D-classes, {} regular, {} sub-seed iso-classes",
            r.elements,
            r.d_classes,
            r.regular_d_classes,
            r.iso_class_count()
        )?;
        let labels: Vec<String> = r.rows.iter().map(|row| spec_label(self.seed, &row.class.representative)).collect();
        let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(0).max("representative".len());
        writeln!(f, "{:<width$}  members  subalgebra  D-class  |H|", "representative")?;
        for (row, label) in r.rows.iter().zip(&labels) {
            writeln!(
                f,
                "{:<width$}  {:>7}  {:>10}  {:>7}  {:>3}",
                label,
                row.class.members.len(),
                if row.subalgebra_type { "yes" } else { "no" },
                row.d_class,
                row.h_group_order
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::DEFAULT_ELEMENT_CAP;

    fn a2() -> Seed {
        Seed::from_arrows(&["x1", "x2"], &[], &[("x1", "x2", 1)]).unwrap()
    }

    #[test]
    fn subalgebra_type_examples() {
        let s = a2();
        assert!(is_subalgebra_type(&s, &SubSeedSpec::default()));
        assert!(!is_subalgebra_type(&s, &SubSeedSpec::from_labels(&s, &[] as &[&str], &["x1"]).unwrap()));
        let t = Seed::from_arrows(&["x1", "x2", "x3"], &[], &[("x1", "x2", 1)]).unwrap();
        assert!(is_subalgebra_type(&t, &SubSeedSpec::from_labels(&t, &[] as &[&str], &["x3"]).unwrap()));
    }

    #[test]
    fn class_counts() {
        assert_eq!(iso_classes_of_subseeds(&a2()).unwrap().len(), 6);
        assert_eq!(iso_classes_of_subseeds(&Seed::empty()).unwrap().len(), 1);
        for m in 1..=3 {
            let labels: Vec<String> = (1..=m).map(|i| format!("y{i}")).collect();
            let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
            assert_eq!(iso_classes_of_subseeds(&Seed::trivial(&refs).unwrap()).unwrap().len(), m + 1);
        }
    }

    #[test]
    fn a2_report() {
        let r = theorem_number_report(&Arc::new(a2()), DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!((r.iso_class_count(), r.regular_d_classes), (6, 6));
        let text = ReportTable { seed: &a2(), report: &r }.to_string();
        assert!(text.contains("6 regular"));
    }

    #[test]
    fn corrupted_table_is_rejected() {
        let seed = Arc::new(a2());
        let t = enumerate_endpar(&seed, DEFAULT_ELEMENT_CAP).unwrap();
        // Send every product to the zero: only ∅ stays regular.
        let z = t.zero_index() as u32;
        let broken = SemigroupTable::with_products(seed.clone(), t.elements().to_vec(), vec![z; t.len() * t.len()]).unwrap();
        let err = green_relations(&broken).map_err(ClassifyError::from).and_then(|p| {
            verify_correspondence(&broken, &p, iso_classes_of_subseeds(&seed).unwrap())
        });
        assert!(err.is_err());
    }
}
