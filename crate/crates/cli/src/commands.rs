//! One function per subcommand, generic over the field of the workspace.

use std::sync::Arc;

use hhlab::algcore::{Bimodule, BimoduleFamily, TriangularAlgebra};
use hhlab::exactla::Field;
use hhlab::hochschild::{cohomology_dims, ext_dims, hh_dims, SequenceReport};
use hhlab::liealg::{
    block_decomposition, bracket_check, decompose_derivation, delta_report, derivation_space, follows_block_pattern,
    inner_count,
};
use hhlab::series::{kronecker_series_check, modp_periodicity_check, multiplicity_family, poincare_poly, projective_split_check};
use hhlab::trireduce::{
    cover_sequence, direct_sum_sequence, exchange_check, functoriality_check, happel_sequence, lambda_cone,
    mayer_vietoris_sequence, multiplicity_split_check, subfamily_sequence, FamilyCones, SequenceCheck,
};
use serde_json::{json, Value};

use crate::report::{degree_range, verdict, Report};
use crate::{CliError, Command, LieCmd, Options, SequenceCmd, SeriesCmd, SplitCmd, Target, Workspace};

pub fn dispatch<F: Field>(ws: &Workspace<F>, command: &Command, opts: Options) -> Result<Report, CliError> {
    match command {
        Command::Validate => Ok(validate(ws)),
        Command::Hh { algebra } => {
            let dims = hh_dims(ws.algebra(algebra)?, opts.n_max, opts.budget)?;
            let text = vec![format!("HH^n({algebra}), {}: {dims:?}", degree_range(dims.len()))];
            Ok(Report::new(json!({ "dims": dims }), text))
        }
        Command::Ext { bimodule, other } => {
            let other = other.as_deref().unwrap_or(bimodule);
            let dims = ext_dims(ws.bimodule(bimodule)?, ws.bimodule(other)?, opts.n_max, opts.budget)?;
            let text = vec![format!("Ext^n({bimodule}, {other}), {}: {dims:?}", degree_range(dims.len()))];
            Ok(Report::new(json!({ "dims": dims }), text))
        }
        Command::Cone { target } => {
            let family = family_of(ws, target)?;
            let cone = lambda_cone(&family, opts.n_max, opts.budget)?;
            let dims = cohomology_dims(&cone.cone);
            let is_complex = cone.cone.is_complex();
            let text = vec![
                format!("modified cohomology, {}: {dims:?}", degree_range(dims.len())),
                format!("d∘d = 0: {}", verdict(is_complex)),
            ];
            Ok(Report::checked(json!({ "dims": dims, "d_squared_zero": is_complex }), text, is_complex))
        }
        Command::Sequence { kind } => sequence(ws, kind, opts),
        Command::Split { kind } => split(ws, kind, opts),
        Command::Lie { kind } => lie(ws, kind, opts),
        Command::Series { kind } => series(ws, kind, opts),
    }
}

fn validate<F: Field>(ws: &Workspace<F>) -> Report {
    let algebras: serde_json::Map<String, Value> =
        ws.algebras.iter().map(|(n, a)| (n.clone(), json!({ "dim": a.dim() }))).collect();
    let bimodules: serde_json::Map<String, Value> = ws
        .bimodules
        .iter()
        .map(|(n, m)| {
            let v = json!({ "dim": m.dim(), "left_dim": m.left_algebra().dim(), "right_dim": m.right_algebra().dim() });
            (n.clone(), v)
        })
        .collect();
    let families: serde_json::Map<String, Value> = ws
        .families
        .iter()
        .map(|(n, f)| (n.clone(), json!({ "members": f.len(), "multiplicities": f.multiplicities() })))
        .collect();
    let text = vec![format!(
        "valid workspace over {}: {} algebras, {} bimodules, {} families",
        ws.field.spec(),
        algebras.len(),
        bimodules.len(),
        families.len()
    )];
    let json = json!({
        "field": ws.field.spec().to_string(),
        "algebras": algebras,
        "bimodules": bimodules,
        "families": families,
    });
    Report::new(json, text)
}

fn family_of<F: Field>(ws: &Workspace<F>, target: &Target) -> Result<BimoduleFamily<F>, CliError> {
    if let Some(name) = &target.family {
        return Ok(ws.family(name)?.clone());
    }
    let name = target
        .bimodule
        .as_ref()
        .ok_or_else(|| CliError::Usage("give --family or --bimodule".into()))?;
    let m = ws.bimodule(name)?.clone();
    let mut members = vec![m.clone()];
    if let Some(other) = &target.other {
        members.push(ws.bimodule(other)?.clone());
    }
    Ok(BimoduleFamily::simple(m.left_algebra().clone(), m.right_algebra().clone(), members)?)
}

fn sequence_json<F: Field>(r: &SequenceReport<F>) -> Value {
    json!({
        "nodes": r.nodes,
        "map_ranks": r.map_ranks(),
        "short_exact": r.short_exact,
        "all_exact": r.all_exact(),
    })
}

fn sequence_text<F: Field>(title: &str, r: &SequenceReport<F>) -> Vec<String> {
    let mut lines = vec![format!(
        "{title}: exact at {} of {} interior nodes, short sequence {}",
        r.nodes.iter().filter(|n| n.exact == Some(true)).count(),
        r.interior_count(),
        if r.short_exact { "verified" } else { "NOT verified" }
    )];
    for n in &r.nodes {
        let mark = match n.exact {
            Some(true) => "exact",
            Some(false) => "NOT EXACT",
            None => "end",
        };
        lines.push(format!("  {} dim {} ({mark})", n.label, n.dim));
    }
    lines
}

fn check_report<F: Field>(title: &str, check: &SequenceCheck<F>) -> Report {
    let mut json = sequence_json(&check.report);
    json["kind"] = serde_json::to_value(check.kind).expect("serializable");
    Report::checked(json, sequence_text(title, &check.report), check.all_exact())
}

fn parse_indices(s: &str) -> Result<Vec<usize>, CliError> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| CliError::Usage(format!("invalid member index `{t}`"))))
        .collect()
}

fn sequence<F: Field>(ws: &Workspace<F>, kind: &SequenceCmd, opts: Options) -> Result<Report, CliError> {
    let target = match kind {
        SequenceCmd::Happel { target, .. }
        | SequenceCmd::Lemma1 { target }
        | SequenceCmd::Lemma3 { target, .. }
        | SequenceCmd::Mv { target, .. }
        | SequenceCmd::Theorem4 { target, .. } => target,
    };
    let family = family_of(ws, target)?;
    let cones = FamilyCones::for_family(&family, opts.n_max, opts.budget)?;
    let all = cones.all();
    let in_range = |xs: &[usize]| -> Result<(), CliError> {
        match xs.iter().find(|x| **x >= all.len()) {
            Some(x) => Err(CliError::Usage(format!("member index {x} out of range (family has {})", all.len()))),
            None => Ok(()),
        }
    };
    match kind {
        SequenceCmd::Happel { member, .. } => {
            in_range(&[*member])?;
            Ok(check_report("sequence of one bimodule", &happel_sequence(&cones, *member)?))
        }
        SequenceCmd::Lemma1 { .. } => Ok(check_report("direct-sum sequence", &direct_sum_sequence(&cones)?)),
        SequenceCmd::Lemma3 { sub, .. } => {
            in_range(sub)?;
            Ok(check_report("subfamily sequence", &subfamily_sequence(&cones, &all, sub)?))
        }
        SequenceCmd::Mv { first, second, .. } => {
            in_range(first)?;
            in_range(second)?;
            let check = mayer_vietoris_sequence(&cones, first, second)?;
            let functoriality = functoriality_check(&cones, &all, first, &[], second)?;
            let mut report = check_report("Mayer–Vietoris sequence", &check);
            report.json["functoriality"] = serde_json::to_value(&functoriality).expect("serializable");
            report.text.push(format!("restriction and section identities: {}", verdict(functoriality.all_hold())));
            report.verified = Some(check.all_exact() && functoriality.all_hold());
            Ok(report)
        }
        SequenceCmd::Theorem4 { cover, .. } => {
            let parts = if cover.is_empty() {
                all.iter().map(|i| vec![*i]).collect()
            } else {
                cover.iter().map(|c| parse_indices(c)).collect::<Result<Vec<_>, _>>()?
            };
            for p in &parts {
                in_range(p)?;
            }
            Ok(check_report("cover sequence", &cover_sequence(&cones, &all, &parts)?))
        }
    }
}

fn split_json<T: serde::Serialize>(report: &T, holds: bool) -> Value {
    let mut json = serde_json::to_value(report).expect("serializable");
    json["holds"] = Value::Bool(holds);
    json
}

fn failing_degrees(per_degree: &[bool]) -> Vec<usize> {
    per_degree.iter().enumerate().filter(|(_, ok)| !**ok).map(|(n, _)| n).collect()
}

fn identity_line(name: &str, per_degree: &[bool]) -> String {
    let bad = failing_degrees(per_degree);
    if bad.is_empty() {
        format!("{name}: holds in {}", degree_range(per_degree.len()))
    } else {
        format!("{name}: FAILS in degrees {bad:?}")
    }
}

fn split<F: Field>(ws: &Workspace<F>, kind: &SplitCmd, opts: Options) -> Result<Report, CliError> {
    match kind {
        SplitCmd::Theorem1 { target, mults } => {
            let mut family = family_of(ws, target)?;
            if !mults.is_empty() {
                family = BimoduleFamily::new(
                    family.left_algebra().clone(),
                    family.right_algebra().clone(),
                    family.members().to_vec(),
                    mults.clone(),
                )?;
            }
            let r = multiplicity_split_check(&family, opts.n_max, opts.budget)?;
            let text = vec![
                format!("HH of the sum with multiplicities: {:?}", r.mid_dims),
                format!("HH of the plain sum:               {:?}", r.rhs_dims),
                format!("Ext correction:                    {:?}", r.lhs_dims),
                identity_line("multiplicity split identity", &r.identity_holds),
                format!("restriction onto the plain sum is {}", if r.section_found { "onto" } else { "NOT onto" }),
            ];
            let holds = r.holds() && r.section_found;
            Ok(Report::checked(split_json(&r, holds), text, holds))
        }
        SplitCmd::Corollary1 { bimodule, mult } => {
            let m = ws.bimodule(bimodule)?;
            let r = projective_split_check(m.left_algebra(), m, *mult, opts.n_max, opts.budget)?;
            let text = vec![
                format!("HH(T) = {:?}, HH(A) = {:?}, HH(B) = {:?}, Ext(M, M) = {:?}", r.hh_t, r.hh_a, r.hh_b, r.ext_mm),
                identity_line("HH(T) = HH(A) + (k²−1)·HH^{-1}(B)", &r.identity_holds),
                identity_line("HH(B) = Ext(M, M)", &r.end_identity_holds),
            ];
            Ok(Report::checked(split_json(&r, r.holds()), text, r.holds()))
        }
        SplitCmd::Exchange { bimodule, other } => {
            let r = exchange_check(ws.bimodule(bimodule)?, ws.bimodule(other)?, opts.n_max, opts.budget)?;
            let text = vec![
                format!("HH(T_M) + Ext^-1(N, N) = {:?}", r.lhs_dims),
                format!("HH(T_N) + Ext^-1(M, M) = {:?}", r.rhs_dims),
                identity_line("exchange identity", &r.holds),
            ];
            Ok(Report::checked(split_json(&r, r.all_hold()), text, r.all_hold()))
        }
    }
}

fn lie<F: Field>(ws: &Workspace<F>, kind: &LieCmd, opts: Options) -> Result<Report, CliError> {
    match kind {
        LieCmd::Der { algebra } => {
            let a = ws.algebra(algebra)?;
            let space = derivation_space(a);
            let cochain = hh_dims(a, opts.n_max.max(3), opts.budget)?;
            let checks = [
                ("brackets_close", space.brackets_close()),
                ("inner_is_ideal", space.int_is_ideal()),
                ("jacobi", space.jacobi_holds()),
                ("alternating", space.bracket_is_alternating()),
                ("matches_cochains", cochain[1] == space.hh1_dim()),
            ];
            let holds = checks.iter().all(|(_, ok)| *ok);
            let mut json = json!({
                "der_dim": space.der_dim(),
                "int_dim": space.int_dim(),
                "hh1_dim": space.hh1_dim(),
                "hh1_from_cochains": cochain[1],
            });
            let mut text = vec![format!(
                "Der({algebra}) = {}, Int = {}, HH¹ = {} (cochains: {})",
                space.der_dim(),
                space.int_dim(),
                space.hh1_dim(),
                cochain[1]
            )];
            for (name, ok) in checks {
                json[name] = Value::Bool(ok);
                text.push(format!("{}: {}", name.replace('_', " "), verdict(ok)));
            }
            Ok(Report::checked(json, text, holds))
        }
        LieCmd::Decompose { bimodule, other } => {
            let m = ws.bimodule(bimodule)?;
            let t = TriangularAlgebra::new(m.clone());
            let space = derivation_space(&t.algebra);
            let mut roundtrip = true;
            let mut pattern = true;
            let mut parts = Vec::with_capacity(space.der_dim());
            for d in &space.der_basis {
                let p = decompose_derivation(&t, d)?;
                roundtrip &= p.recompose(&t) == *d && p.satisfies_compatibility(&t);
                pattern &= follows_block_pattern(&t, d);
                parts.push(p);
            }
            let mut bracket = true;
            for x in &parts {
                for y in &parts {
                    bracket &= bracket_check(&t, x, y);
                }
            }
            let count = inner_count(&t);
            let mut json = json!({
                "der_dim": space.der_dim(),
                "hh1_dim": space.hh1_dim(),
                "roundtrip": roundtrip,
                "block_pattern": pattern,
                "bracket_formula": bracket,
                "pairs_checked": parts.len() * parts.len(),
                "inner_count": count,
            });
            let mut text = vec![
                format!("Der[A {bimodule}; 0 B] = {}, HH¹ = {}", space.der_dim(), space.hh1_dim()),
                format!("block decomposition and recomposition: {}", verdict(roundtrip && pattern)),
                format!("blockwise bracket on {} pairs: {}", parts.len() * parts.len(), verdict(bracket)),
                format!("inner derivation count: {}", verdict(count.holds())),
            ];
            let mut holds = roundtrip && pattern && bracket && count.holds();
            if let Some(other) = other {
                let n = ws.bimodule(other)?;
                let dec = block_decomposition(m, n)?;
                json["block_decomposition"] = serde_json::to_value(&dec.summary).expect("serializable");
                text.push(format!(
                    "HH¹[A {bimodule}⊕{other}; 0 B] = {}: diagonal {}, upper {}, lower {}; identities: {}",
                    dec.summary.hh1_dim,
                    dec.summary.h1_diagonal_dim,
                    dec.summary.h1_upper_dim,
                    dec.summary.h1_lower_dim,
                    verdict(dec.summary.all_hold())
                ));
                holds &= dec.summary.all_hold();
            }
            Ok(Report::checked(json, text, holds))
        }
        LieCmd::Delta { bimodule, other } => {
            let (m, n) = (ws.bimodule(bimodule)?, ws.bimodule(other)?);
            let r = delta_report(m, n)?;
            let mut json = json!({
                "member": r.member,
                "extensions": r.extensions.len(),
                "has_obstruction_witness": r.obstruction_witness.is_some(),
            });
            let mut text = vec![format!(
                "{other} {} in the class of {bimodule}",
                if r.member { "lies" } else { "does not lie" }
            )];
            let mut holds = true;
            if let Some(seq) = &r.sequence {
                json["sequence"] = sequence_json(seq);
                json["alternating_sum"] = json!(seq.alternating_sum(0..seq.nodes.len()));
                text.extend(sequence_text("five-term sequence", seq));
                holds = seq.all_exact();
            }
            Ok(Report::checked(json, text, holds))
        }
    }
}

fn series<F: Field>(ws: &Workspace<F>, kind: &SeriesCmd, opts: Options) -> Result<Report, CliError> {
    match kind {
        SeriesCmd::Poincare { algebra } => {
            let p = poincare_poly(ws.algebra(algebra)?, opts.n_max, opts.budget)?;
            let json = json!({ "coefficients": p.coefficients, "polynomial": p.to_string() });
            Ok(Report::new(json, vec![p.to_string()]))
        }
        SeriesCmd::Kronecker { bimodule, mult } => {
            let r = kronecker_series_check(ws.bimodule(bimodule)?, *mult, opts.n_max, opts.budget)?;
            let text = vec![
                format!("series with multiplicity {mult}: {}", r.lhs),
                format!("predicted:                  {}", r.rhs),
                identity_line("series identity", &r.per_degree),
            ];
            Ok(Report::checked(split_json(&r, r.holds()), text, r.holds()))
        }
        SeriesCmd::Modp { bimodule, mults } => {
            let p = ws.field.spec().characteristic();
            if p == 0 {
                return Err(CliError::Usage("modp needs a prime field (use --field Fp:P)".into()));
            }
            let m: &Arc<Bimodule<F>> = ws.bimodule(bimodule)?;
            let family = multiplicity_family(m, mults, opts.n_max, opts.budget)?;
            let r = modp_periodicity_check(&family, p)?;
            let series: serde_json::Map<String, Value> =
                family.iter().map(|(k, s)| (k.to_string(), json!(s.coefficients))).collect();
            let mut json = split_json(&r, r.holds());
            json["series"] = Value::Object(series);
            let mut text: Vec<String> = family.iter().map(|(k, s)| format!("multiplicity {k}: {s}")).collect();
            for (k, k2, ok) in &r.comparisons {
                text.push(format!("{k} and {k2} agree mod {p}: {}", if *ok { "yes" } else { "NO" }));
            }
            text.push(format!("periodicity: {}", verdict(r.holds())));
            Ok(Report::checked(json, text, r.holds()))
        }
    }
}
