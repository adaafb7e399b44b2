use std::collections::BTreeSet;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use partial_seeds::classify::{iso_classes_of_subseeds, spec_label, theorem_number_report, verify_correspondence, ClassificationReport};
use partial_seeds::green::regular_d_classes;
use partial_seeds::io::{HomFile, SeedFile, SurfaceFile, TableFile, SCHEMA_VERSION};
use partial_seeds::semigroup::projected_element_bound;
use partial_seeds::surface::{
    check_theorem_sur, cut_along, freeze_row_identity, paunched_surface, seed_from_surface, surface_iso, CutMode,
    SurfaceData,
};
use partial_seeds::symbolic::{enumerate_clusters, LabeledSeedState, SymbolicCaps};
use partial_seeds::{
    compose, enumerate_endpar, green_relations, validate_parts, HomError, PartialSeedHom, Seed, SemigroupError,
    SemigroupTable,
};

use crate::error::CliError;
use crate::report::*;
use crate::{Command, Format, RunConfig};

/// Spec counts above this get a warning before enumeration.
const SPEC_WARNING: f64 = 1e5;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: malformed JSON: {e}", path.display())))
}

fn load_seed(path: &Path) -> Result<Arc<Seed>, CliError> {
    Ok(Arc::new(parse_json::<SeedFile>(path)?.to_seed()?))
}

fn load_surface(path: &Path) -> Result<SurfaceData, CliError> {
    Ok(parse_json::<SurfaceFile>(path)?.to_surface()?)
}

fn load_table(path: &Path) -> Result<SemigroupTable, CliError> {
    Ok(parse_json::<TableFile>(path)?.to_table()?)
}

struct Output<'a> {
    format: Format,
    out: Option<&'a Path>,
}

impl Output<'_> {
    fn emit<D: Document>(&self, doc: &D) -> Result<(), CliError> {
        let text = match self.format {
            Format::Machine => serde_json::to_string_pretty(doc).expect("serializable") + "\n",
            Format::Human => doc.human(),
        };
        match self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    let out = Output { format: config.format, out: config.out.as_deref() };
    let caps = config.caps;
    let symbolic = SymbolicCaps { max_states: caps.max_states.get(), max_terms: caps.max_terms.get() };
    let cap = caps.cap.get();
    match &config.command {
        Command::Validate { seed } => validate(&out, seed),
        Command::Mutate { seed, steps } => mutate(&out, seed, steps, symbolic),
        Command::Clusters { seed } => {
            let seed = load_seed(seed)?;
            let e = enumerate_clusters(&seed, caps.depth.get(), symbolic)?;
            let names: Vec<String> = seed.labels().map(str::to_string).collect();
            let clusters: Vec<Vec<String>> = e.clusters.iter().map(|c| c.render(&names)).collect();
            out.emit(&ClustersDoc {
                schema_version: SCHEMA_VERSION,
                status: e.status.to_string(),
                depth: e.depth,
                count: clusters.len(),
                clusters,
            })
        }
        Command::HomCheck { seed, hom, target } => hom_check(&out, seed, hom, target.as_deref(), cap),
        Command::Compose { seed, f, g, middle, target } => {
            let source = load_seed(seed)?;
            let middle = match middle {
                Some(p) => load_seed(p)?,
                None => source.clone(),
            };
            let target = match target {
                Some(p) => load_seed(p)?,
                None => middle.clone(),
            };
            let f = parse_json::<HomFile>(f)?.to_hom(source, middle.clone())?;
            let g = parse_json::<HomFile>(g)?.to_hom(middle, target)?;
            let gf = compose(&g, &f)?;
            out.emit(&ComposeDoc { schema_version: SCHEMA_VERSION, display: gf.to_string(), result: HomFile::from_hom(&gf) })
        }
        Command::Endpar { seed, save_table } => {
            let seed = load_seed(seed)?;
            let table = enumerate(&seed, cap)?;
            let triples = table.check_associativity(10_000_000, 200_000, 0)?;
            table.check_zero()?;
            if let Some(path) = save_table {
                let text = serde_json::to_string(&TableFile::from_table(&table)).expect("serializable");
                fs::write(path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            let list = element_docs(&table, None);
            out.emit(&EndparDoc {
                schema_version: SCHEMA_VERSION,
                elements: table.len(),
                projected_bound: projected_element_bound(&seed),
                zero: table.zero_index(),
                idempotents: list.iter().filter(|e| e.idempotent).count(),
                associativity_triples: triples,
                list,
            })
        }
        Command::Green { seed, table } => {
            let table = table_from(seed.as_deref(), table.as_deref(), cap)?;
            green(&out, &table)
        }
        Command::Classify { seed, table } => classify(&out, seed.as_deref(), table.as_deref(), cap),
        Command::SurfaceSeed { surface } => {
            let data = load_surface(surface)?;
            out.emit(&SeedFile::from_seed(&seed_from_surface(&data)?))
        }
        Command::Cut { surface, diagonal, freeze } => {
            let data = load_surface(surface)?;
            let mode = if *freeze { CutMode::Freeze } else { CutMode::Delete };
            out.emit(&SurfaceFile::from_surface(&cut_along(&data, diagonal, mode)?))
        }
        Command::Paunch { surface, i0, i1 } => {
            let data = load_surface(surface)?;
            out.emit(&SurfaceFile::from_surface(&paunched_surface(&data, i0, i1)?))
        }
        Command::CheckSur { surface, i0, i1, all, max_cut } => {
            check_sur(&out, &load_surface(surface)?, i0, i1, *all, *max_cut)
        }
        Command::SurfaceIso { a, b } => {
            let iso = surface_iso(&load_surface(a)?, &load_surface(b)?);
            let components = iso
                .as_ref()
                .map(|iso| {
                    iso.components
                        .iter()
                        .enumerate()
                        .map(|(source, (target, g))| ComponentMap {
                            source,
                            target: *target,
                            rotation: g.rotation,
                            reflected: g.reflected,
                        })
                        .collect()
                })
                .unwrap_or_default();
            out.emit(&SurfaceIsoDoc { schema_version: SCHEMA_VERSION, isomorphic: iso.is_some(), components })
        }
    }
}

fn validate(out: &Output, path: &Path) -> Result<(), CliError> {
    let file: SeedFile = parse_json(path)?;
    let rows = file.integer_rows()?;
    let report = validate_parts(&file.exchangeable, &file.frozen, &rows);
    let doc = ValidateDoc::new(
        report.violations.iter().map(ToString::to_string).collect(),
        report.symmetrizer.as_ref().map(|d| d.iter().map(ToString::to_string).collect()),
    );
    out.emit(&doc)?;
    if doc.valid {
        Ok(())
    } else {
        Err(CliError::Input(format!("invalid seed: {report}")))
    }
}

fn resolve_step(seed: &Seed, step: &str) -> Result<usize, CliError> {
    let n = seed.n();
    if let Some(i) = seed.index_of(step) {
        return if i < n { Ok(i) } else { Err(CliError::Input(format!("`{step}` is not an exchangeable variable"))) };
    }
    match step.parse::<usize>() {
        Ok(k) if k < n => Ok(k),
        Ok(k) => Err(CliError::Input(format!("mutation index {k} out of range: the seed has {n} exchangeable variables"))),
        Err(_) => Err(CliError::Input(format!("unknown variable label `{step}`"))),
    }
}

fn step_doc(base: &Seed, state: &LabeledSeedState, mutated: Option<String>) -> Result<MutationStep, CliError> {
    let seed = Seed::new(base.exchangeable().to_vec(), base.frozen().to_vec(), state.matrix().to_rows())?;
    let names = state.names();
    Ok(MutationStep { mutated, seed: SeedFile::from_seed(&seed), cluster: state.assignment().iter().map(|f| f.render(&names)).collect() })
}

fn mutate(out: &Output, path: &Path, steps: &[String], caps: SymbolicCaps) -> Result<(), CliError> {
    let seed = load_seed(path)?;
    let ks = steps.iter().map(|s| resolve_step(&seed, s)).collect::<Result<Vec<_>, _>>()?;
    let mut state = LabeledSeedState::initial(seed.clone());
    let mut docs = vec![step_doc(&seed, &state, None)?];
    for k in ks {
        state = state.mutate(k, caps)?;
        docs.push(step_doc(&seed, &state, Some(seed.label(k).to_string()))?);
    }
    out.emit(&MutateDoc { schema_version: SCHEMA_VERSION, steps: docs })
}

fn hom_check(out: &Output, seed: &Path, hom: &Path, target: Option<&Path>, cap: usize) -> Result<(), CliError> {
    let source = load_seed(seed)?;
    let target = match target {
        Some(p) => load_seed(p)?,
        None => source.clone(),
    };
    let file: HomFile = parse_json(hom)?;
    let f = match file.to_hom(source.clone(), target.clone()) {
        Ok(f) => f,
        Err(partial_seeds::io::IoError::Hom(HomError::Violation(v))) => {
            out.emit(&HomCheckDoc {
                schema_version: SCHEMA_VERSION,
                valid: false,
                violation: Some(v.to_string()),
                display: None,
                injective: None,
                image_spec: None,
                id_form: None,
                idempotent: None,
                regular: None,
                regularity_note: None,
            })?;
            return Err(CliError::Input(format!("not a partial seed homomorphism: {v}")));
        }
        Err(e) => return Err(e.into()),
    };
    let (i0, i1) = f.image_spec().labels(&target);
    let endo = source == target;
    let (regular, regularity_note) = if endo { regularity(&f, cap) } else { (None, None) };
    out.emit(&HomCheckDoc {
        schema_version: SCHEMA_VERSION,
        valid: true,
        violation: None,
        display: Some(f.to_string()),
        injective: Some(f.is_injective()),
        image_spec: Some(HomSpec { i0, i1 }),
        id_form: endo.then(|| f.is_id_form()),
        idempotent: if endo { Some(compose(&f, &f)? == f) } else { None },
        regular,
        regularity_note,
    })
}

fn regularity(f: &PartialSeedHom, cap: usize) -> (Option<bool>, Option<String>) {
    match enumerate_endpar(f.source(), cap) {
        Ok(t) => match t.index_of(f) {
            Some(i) => (Some(t.regular_witness(i).is_some()), None),
            None => (None, Some("element missing from the enumerated semigroup".into())),
        },
        Err(e) => (None, Some(e.to_string())),
    }
}

fn warn_on_size(seed: &Seed) {
    let specs = 3f64.powi(seed.n() as i32) * 2f64.powi(seed.m() as i32);
    if specs > SPEC_WARNING {
        eprintln!("warning: {specs} sub-seed specs to enumerate");
    }
    eprintln!("projected size: at most {} elements", projected_element_bound(seed));
}

fn enumerate(seed: &Arc<Seed>, cap: usize) -> Result<SemigroupTable, CliError> {
    warn_on_size(seed);
    enumerate_endpar(seed, cap).map_err(|e| match e {
        SemigroupError::CapExceeded { .. } => {
            CliError::Cap(format!("{e}; projected size at most {}", projected_element_bound(seed)))
        }
        other => other.into(),
    })
}

fn table_from(seed: Option<&Path>, table: Option<&Path>, cap: usize) -> Result<SemigroupTable, CliError> {
    match (seed, table) {
        (_, Some(t)) => load_table(t),
        (Some(s), None) => enumerate(&load_seed(s)?, cap),
        (None, None) => Err(CliError::Input("a seed file or --table is required".into())),
    }
}

fn element_docs(t: &SemigroupTable, regular: Option<&[bool]>) -> Vec<ElementDoc> {
    t.elements()
        .iter()
        .enumerate()
        .map(|(i, e)| ElementDoc {
            index: i,
            display: e.to_string(),
            idempotent: t.is_idempotent(i),
            regular: regular.map(|r| r[i]),
        })
        .collect()
}

fn green(out: &Output, t: &SemigroupTable) -> Result<(), CliError> {
    let p = green_relations(t)?;
    let regular = regular_d_classes(t, &p)?;
    let classes: Vec<DClassDoc> = p
        .d
        .classes()
        .iter()
        .enumerate()
        .map(|(index, members)| {
            let rows: Vec<usize> = members.iter().map(|&e| p.r.class_of(e)).collect::<BTreeSet<_>>().into_iter().collect();
            let cols: Vec<usize> = members.iter().map(|&e| p.l.class_of(e)).collect::<BTreeSet<_>>().into_iter().collect();
            let egg_box = rows
                .iter()
                .map(|&r| {
                    cols.iter()
                        .map(|&l| members.iter().copied().filter(|&e| p.r.class_of(e) == r && p.l.class_of(e) == l).collect())
                        .collect()
                })
                .collect();
            DClassDoc {
                index,
                regular: p.regular[members[0]],
                size: members.len(),
                h_order: p.h.class(p.h.class_of(members[0])).len(),
                subseed: regular.iter().find(|r| r.d_class == index).map(|r| spec_label(t.seed(), &r.spec)),
                egg_box,
            }
        })
        .collect();
    let list = element_docs(t, Some(&p.regular));
    out.emit(&GreenDoc {
        schema_version: SCHEMA_VERSION,
        elements: t.len(),
        idempotents: list.iter().filter(|e| e.idempotent).count(),
        l_classes: p.l.num_classes(),
        r_classes: p.r.num_classes(),
        h_classes: p.h.num_classes(),
        d_classes: p.d.num_classes(),
        j_classes: p.j.num_classes(),
        regular_d_classes: regular.iter().map(|r| r.d_class).collect(),
        classes,
        list,
    })
}

fn classify(out: &Output, seed: Option<&Path>, table: Option<&Path>, cap: usize) -> Result<(), CliError> {
    let (seed, report): (Arc<Seed>, ClassificationReport) = match (seed, table) {
        (_, Some(path)) => {
            let t = load_table(path)?;
            let p = green_relations(&t)?;
            let classes = iso_classes_of_subseeds(t.seed())?;
            let report = verify_correspondence(&t, &p, classes)?;
            (t.seed().clone(), report)
        }
        (Some(path), None) => {
            let seed = load_seed(path)?;
            warn_on_size(&seed);
            let report = theorem_number_report(&seed, cap).map_err(|e| match e {
                partial_seeds::classify::ClassifyError::Semigroup(SemigroupError::CapExceeded { .. }) => {
                    CliError::Cap(format!("{e}; projected size at most {}", projected_element_bound(&seed)))
                }
                other => other.into(),
            })?;
            (seed, report)
        }
        (None, None) => return Err(CliError::Input("a seed file or --table is required".into())),
    };
    let rows = report
        .rows
        .iter()
        .map(|r| ClassRowDoc {
            representative: spec_label(&seed, &r.class.representative),
            members: r.class.members.iter().map(|m| spec_label(&seed, m)).collect(),
            subalgebra_type: r.subalgebra_type,
            d_class: r.d_class,
            h_order: r.h_group_order,
        })
        .collect();
    out.emit(&ClassifyDoc {
        schema_version: SCHEMA_VERSION,
        elements: report.elements,
        d_classes: report.d_classes,
        regular_d_classes: report.regular_d_classes,
        iso_classes: report.iso_class_count(),
        bijection_verified: true,
        rows,
    })
}

/// Every `(I0, I1)` with at most `max_cut` labels: diagonals may go to either
/// side, laminations only to `I1`.
fn small_specs(data: &SurfaceData, max_cut: usize) -> Vec<(Vec<String>, Vec<String>)> {
    let mut vars: Vec<(String, bool)> = data.diagonals().iter().map(|d| (d.label.clone(), true)).collect();
    vars.extend(data.laminations().iter().map(|l| (l.label.clone(), false)));
    let mut out = Vec::new();
    fn go(
        vars: &[(String, bool)],
        from: usize,
        budget: usize,
        cur: &mut (Vec<String>, Vec<String>),
        out: &mut Vec<(Vec<String>, Vec<String>)>,
    ) {
        out.push(cur.clone());
        if budget == 0 {
            return;
        }
        for i in from..vars.len() {
            let (label, ex) = &vars[i];
            if *ex {
                cur.0.push(label.clone());
                go(vars, i + 1, budget - 1, cur, out);
                cur.0.pop();
            }
            cur.1.push(label.clone());
            go(vars, i + 1, budget - 1, cur, out);
            cur.1.pop();
        }
    }
    go(&vars, 0, max_cut, &mut (Vec::new(), Vec::new()), &mut out);
    out
}

fn check_sur(
    out: &Output,
    data: &SurfaceData,
    i0: &[String],
    i1: &[String],
    all: bool,
    max_cut: usize,
) -> Result<(), CliError> {
    let specs = if all { small_specs(data, max_cut) } else { vec![(i0.to_vec(), i1.to_vec())] };
    let mut checks = Vec::with_capacity(specs.len());
    for (i0, i1) in specs {
        let holds = check_theorem_sur(data, &i0, &i1)?;
        checks.push(SurCheck { i0, i1, holds });
    }
    let row_identities = if all {
        data.diagonals()
            .iter()
            .map(|d| Ok(RowIdentity { diagonal: d.label.clone(), holds: freeze_row_identity(data, &d.label)? }))
            .collect::<Result<Vec<_>, CliError>>()?
    } else {
        Vec::new()
    };
    let failures = checks.iter().filter(|c| !c.holds).count() + row_identities.iter().filter(|r| !r.holds).count();
    out.emit(&CheckSurDoc { schema_version: SCHEMA_VERSION, checks, row_identities, failures })?;
    if failures > 0 {
        return Err(CliError::Theorem(format!("{failures} surface checks failed")));
    }
    Ok(())
}
