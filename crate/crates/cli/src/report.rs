//! Machine-readable documents and their human renderings.
//!
//! Every command builds one of these documents. Human output is rendered
//! from the document alone.

use std::fmt::Write;

use partial_seeds::io::{HomFile, SeedFile, SurfaceFile, SCHEMA_VERSION};
use serde::Serialize;

pub trait Document: Serialize {
    fn human(&self) -> String;
}

fn grid(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let parts: Vec<String> = (0..cols).map(|i| format!("{:>w$}", cells[i], w = widths[i])).collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

impl Document for SeedFile {
    fn human(&self) -> String {
        let mut header = vec![String::new()];
        header.extend(self.exchangeable.iter().cloned());
        header.extend(self.frozen.iter().cloned());
        let rows: Vec<Vec<String>> = self
            .exchangeable
            .iter()
            .zip(&self.matrix)
            .map(|(label, row)| std::iter::once(label.clone()).chain(row.iter().map(ToString::to_string)).collect())
            .collect();
        let mut out = format!(
            "exchangeable: [{}]  frozen: [{}]\n",
            self.exchangeable.join(", "),
            self.frozen.join(", ")
        );
        out.push_str(&grid(&header, &rows));
        out
    }
}

impl Document for SurfaceFile {
    fn human(&self) -> String {
        let mut out = String::new();
        match self {
            SurfaceFile::Polygon(p) => {
                let _ = writeln!(out, "{}-gon, diagonals {:?}, laminations {:?}", p.n, p.triangulation, p.laminations);
            }
            SurfaceFile::Full(f) => {
                for (c, comp) in f.components.iter().enumerate() {
                    let _ = writeln!(out, "component {c}: {}-gon [{}]", comp.vertices.len(), comp.vertices.join(" "));
                    for d in f.diagonals.iter().filter(|d| d.component == c) {
                        let _ = writeln!(out, "  {} = ({}, {})", d.label, d.ends.0, d.ends.1);
                    }
                }
                for l in &f.laminations {
                    let curves: Vec<String> =
                        l.curves.iter().map(|c| format!("c{}:({},{})", c.component, c.ends.0, c.ends.1)).collect();
                    let _ = writeln!(out, "lamination {}: [{}]", l.label, curves.join(", "));
                }
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ValidateDoc {
    pub schema_version: u32,
    pub valid: bool,
    pub violations: Vec<String>,
    pub symmetrizer: Option<Vec<String>>,
}

impl ValidateDoc {
    pub fn new(violations: Vec<String>, symmetrizer: Option<Vec<String>>) -> Self {
        Self { schema_version: SCHEMA_VERSION, valid: violations.is_empty(), violations, symmetrizer }
    }
}

impl Document for ValidateDoc {
    fn human(&self) -> String {
        let mut out = String::new();
        if self.valid {
            out.push_str("valid\n");
        } else {
            out.push_str("invalid\n");
            for v in &self.violations {
                let _ = writeln!(out, "  {v}");
            }
        }
        if let Some(d) = &self.symmetrizer {
            let _ = writeln!(out, "symmetrizer: [{}]", d.join(", "));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct MutationStep {
    /// Label of the mutated slot; `None` for the initial seed.
    pub mutated: Option<String>,
    pub seed: SeedFile,
    /// Cluster variable of each exchangeable slot, in the initial variables.
    pub cluster: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct MutateDoc {
    pub schema_version: u32,
    pub steps: Vec<MutationStep>,
}

impl Document for MutateDoc {
    fn human(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            match &step.mutated {
                None => out.push_str("initial seed\n"),
                Some(k) => {
                    let _ = writeln!(out, "step {i}: mutate at {k}");
                }
            }
            out.push_str(&step.seed.human());
            for (label, var) in step.seed.exchangeable.iter().zip(&step.cluster) {
                let _ = writeln!(out, "  {label} = {var}");
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ClustersDoc {
    pub schema_version: u32,
    pub status: String,
    pub depth: usize,
    pub count: usize,
    pub clusters: Vec<Vec<String>>,
}

impl Document for ClustersDoc {
    fn human(&self) -> String {
        let mut out = format!("{} clusters, exploration {} at depth {}\n", self.count, self.status, self.depth);
        for (i, c) in self.clusters.iter().enumerate() {
            let _ = writeln!(out, "  {i}: {{{}}}", c.join(", "));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct HomCheckDoc {
    pub schema_version: u32,
    pub valid: bool,
    pub violation: Option<String>,
    pub display: Option<String>,
    pub injective: Option<bool>,
    pub image_spec: Option<HomSpec>,
    /// Only filled in for endomorphisms.
    pub id_form: Option<bool>,
    pub idempotent: Option<bool>,
    pub regular: Option<bool>,
    pub regularity_note: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct HomSpec {
    pub i0: Vec<String>,
    pub i1: Vec<String>,
}

fn yes_no(flag: bool, yes: &str, no: &str) -> String {
    if flag { yes.to_string() } else { no.to_string() }
}

impl Document for HomCheckDoc {
    fn human(&self) -> String {
        let mut out = String::new();
        if !self.valid {
            let _ = writeln!(out, "f is not a partial seed homomorphism: {}", self.violation.as_deref().unwrap_or(""));
            return out;
        }
        let _ = writeln!(out, "f = {}", self.display.as_deref().unwrap_or(""));
        out.push_str("f is a partial seed homomorphism\n");
        if let Some(inj) = self.injective {
            let _ = writeln!(out, "{}", yes_no(inj, "f is injective", "f is not injective"));
        }
        if let Some(s) = &self.image_spec {
            let _ = writeln!(out, "image: I0={{{}}} I1={{{}}}", s.i0.join(","), s.i1.join(","));
        }
        if let Some(id) = self.id_form {
            let _ = writeln!(out, "{}", yes_no(id, "f is in the form id_{I0,I1}", "f is not in the form id_{I0,I1}"));
        }
        if let Some(e) = self.idempotent {
            let _ = writeln!(out, "{}", yes_no(e, "f is idempotent", "f is not idempotent"));
        }
        match (self.regular, &self.regularity_note) {
            (Some(r), _) => {
                let _ = writeln!(out, "{}", yes_no(r, "f is regular", "f is not regular"));
            }
            (None, Some(note)) => {
                let _ = writeln!(out, "regularity not computed: {note}");
            }
            (None, None) => {}
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ComposeDoc {
    pub schema_version: u32,
    pub display: String,
    pub result: HomFile,
}

impl Document for ComposeDoc {
    fn human(&self) -> String {
        format!("g∘f = {}\n", self.display)
    }
}

#[derive(Debug, Serialize)]
pub struct ElementDoc {
    pub index: usize,
    pub display: String,
    pub idempotent: bool,
    pub regular: Option<bool>,
}

#[derive(Debug, Serialize)]
pub struct EndparDoc {
    pub schema_version: u32,
    pub elements: usize,
    pub projected_bound: f64,
    pub zero: usize,
    pub idempotents: usize,
    pub associativity_triples: u64,
    pub list: Vec<ElementDoc>,
}

impl Document for EndparDoc {
    fn human(&self) -> String {
        let mut out = format!(
            "End_par: {} elements (bound {}), {} idempotents, zero = {}\nassociativity checked on {} triples\n",
            self.elements, self.projected_bound, self.idempotents, self.zero, self.associativity_triples
        );
        for e in &self.list {
            let _ = writeln!(out, "  {:>4}{} {}", e.index, if e.idempotent { "*" } else { " " }, e.display);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct DClassDoc {
    pub index: usize,
    pub regular: bool,
    pub size: usize,
    pub h_order: usize,
    /// Spec of an identity inclusion in the class, for regular classes.
    pub subseed: Option<String>,
    /// One row per R-class and one column per L-class; cells list elements.
    pub egg_box: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Serialize)]
pub struct GreenDoc {
    pub schema_version: u32,
    pub elements: usize,
    pub idempotents: usize,
    pub l_classes: usize,
    pub r_classes: usize,
    pub h_classes: usize,
    pub d_classes: usize,
    pub j_classes: usize,
    pub regular_d_classes: Vec<usize>,
    pub classes: Vec<DClassDoc>,
    pub list: Vec<ElementDoc>,
}

impl Document for GreenDoc {
    fn human(&self) -> String {
        let mut out = format!(
            "End_par: {} elements, {} idempotents\nL {} / R {} / H {} / D {} / J {} classes, {} regular D-classes\n",
            self.elements,
            self.idempotents,
            self.l_classes,
            self.r_classes,
            self.h_classes,
            self.d_classes,
            self.j_classes,
            self.regular_d_classes.len()
        );
        let idem: Vec<bool> = self.list.iter().map(|e| e.idempotent).collect();
        for d in &self.classes {
            let _ = write!(
                out,
                "\nD-class {} [{}] {} R x {} L, |H| = {}",
                d.index,
                if d.regular { "regular" } else { "not regular" },
                d.egg_box.len(),
                d.egg_box.first().map_or(0, Vec::len),
                d.h_order
            );
            if let Some(s) = &d.subseed {
                let _ = write!(out, ", sub-seed {s}");
            }
            out.push('\n');
            let cells: Vec<Vec<String>> = d
                .egg_box
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            let parts: Vec<String> = cell
                                .iter()
                                .map(|&e| if idem[e] { format!("{e}*") } else { e.to_string() })
                                .collect();
                            parts.join(",")
                        })
                        .collect()
                })
                .collect();
            let cols = cells.first().map_or(0, Vec::len);
            let widths: Vec<usize> =
                (0..cols).map(|c| cells.iter().map(|r| r[c].chars().count()).max().unwrap_or(0)).collect();
            let rule: String = widths.iter().map(|w| format!("+{}", "-".repeat(w + 2))).collect::<String>() + "+";
            let _ = writeln!(out, "  {rule}");
            for row in &cells {
                let body: String = row.iter().zip(&widths).map(|(c, w)| format!("| {c:<w$} ")).collect();
                let _ = writeln!(out, "  {body}|");
                let _ = writeln!(out, "  {rule}");
            }
        }
        out.push_str("\nelements (* idempotent):\n");
        for e in &self.list {
            let flag = match e.regular {
                Some(false) => "  (not regular)",
                _ => "",
            };
            let _ = writeln!(out, "  {:>4}{} {}{}", e.index, if e.idempotent { "*" } else { " " }, e.display, flag);
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ClassRowDoc {
    pub representative: String,
    pub members: Vec<String>,
    pub subalgebra_type: bool,
    pub d_class: usize,
    pub h_order: usize,
}

#[derive(Debug, Serialize)]
pub struct ClassifyDoc {
    pub schema_version: u32,
    pub elements: usize,
    pub d_classes: usize,
    pub regular_d_classes: usize,
    pub iso_classes: usize,
    pub bijection_verified: bool,
    pub rows: Vec<ClassRowDoc>,
}

impl Document for ClassifyDoc {
    fn human(&self) -> String {
        let mut out = format!(
            "{} elements, {} D-classes, {} regular, {} sub-seed iso-classes: {}\n",
            self.elements,
            self.d_classes,
            self.regular_d_classes,
            self.iso_classes,
            if self.bijection_verified { "bijection verified" } else { "bijection not verified" }
        );
        let header: Vec<String> =
            ["representative", "members", "subalgebra", "D-class", "|H|"].iter().map(|s| s.to_string()).collect();
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.representative.clone(),
                    r.members.len().to_string(),
                    yes_no(r.subalgebra_type, "yes", "no"),
                    r.d_class.to_string(),
                    r.h_order.to_string(),
                ]
            })
            .collect();
        out.push_str(&grid(&header, &rows));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct SurCheck {
    pub i0: Vec<String>,
    pub i1: Vec<String>,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct RowIdentity {
    pub diagonal: String,
    pub holds: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckSurDoc {
    pub schema_version: u32,
    pub checks: Vec<SurCheck>,
    pub row_identities: Vec<RowIdentity>,
    pub failures: usize,
}

impl Document for CheckSurDoc {
    fn human(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "I0={{{}}} I1={{{}}}: {}",
                c.i0.join(","),
                c.i1.join(","),
                if c.holds { "seed of paunched surface = mixing sub-seed" } else { "MISMATCH" }
            );
        }
        for r in &self.row_identities {
            let _ = writeln!(out, "row identity for {}: {}", r.diagonal, if r.holds { "holds" } else { "fails" });
        }
        let _ = writeln!(out, "{} checks, {} failures", self.checks.len() + self.row_identities.len(), self.failures);
        out
    }
}

#[derive(Debug, Serialize)]
pub struct ComponentMap {
    pub source: usize,
    pub target: usize,
    pub rotation: usize,
    pub reflected: bool,
}

#[derive(Debug, Serialize)]
pub struct SurfaceIsoDoc {
    pub schema_version: u32,
    pub isomorphic: bool,
    pub components: Vec<ComponentMap>,
}

impl Document for SurfaceIsoDoc {
    fn human(&self) -> String {
        if !self.isomorphic {
            return "not isomorphic\n".into();
        }
        let mut out = String::from("isomorphic\n");
        for c in &self.components {
            let _ = writeln!(
                out,
                "  component {} -> {}: rotate by {}{}",
                c.source,
                c.target,
                c.rotation,
                if c.reflected { ", reflected" } else { "" }
            );
        }
        out
    }
}
