//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use hhlab::algcore::{kronecker, BasisAlgebra, Bimodule, BimoduleFamily, TriangularAlgebra};
use hhlab::exactla::{Field, FieldSpec, PrimeField, Rationals};
use hhlab::hochschild::{bar_cochain_complex, ext_complex, hh_dims, Budget};
use hhlab::liealg::{bracket_check, decompose_derivation, delta_report, derivation_space};
use hhlab::series::{kronecker_series_check, modp_periodicity_check, multiplicity_family};
use hhlab::trireduce::{
    cone_equivalence_check, cone_les_report, cover_sequence, functoriality_check, happel_sequence,
    mayer_vietoris_sequence, multiplicity_split_check, relative_bar, subfamily_sequence, triangular_cochain,
    ConeShape, FamilyCones,
};
use hhlab_cli::{load_workspace, run, LoadedWorkspace, Workspace};

type Outcome = Result<String, String>;

const B: Budget = Budget::DEFAULT;
const CORPUS: [&str; 3] = ["kronecker.json", "path.json", "small.json"];

fn corpus_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn corpus_over<F: Field>(spec: FieldSpec, pick: fn(LoadedWorkspace) -> Option<Workspace<F>>) -> Vec<(String, Workspace<F>)> {
    CORPUS
        .iter()
        .map(|name| {
            let ws = load_workspace(&corpus_path(name), Some(spec)).expect("bundled corpus loads");
            (name.to_string(), pick(ws).expect("requested field"))
        })
        .collect()
}

fn rational_corpus() -> Vec<(String, Workspace<Rationals>)> {
    corpus_over(FieldSpec::Rationals, |w| match w {
        LoadedWorkspace::Rationals(w) => Some(w),
        _ => None,
    })
}

fn prime_corpus(p: u64) -> Vec<(String, Workspace<PrimeField>)> {
    corpus_over(FieldSpec::PrimeField(p), |w| match w {
        LoadedWorkspace::Prime(w) => Some(w),
        _ => None,
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ground<F: Field>(f: F) -> Arc<BasisAlgebra<F>> {
    Arc::new(BasisAlgebra::ground(f))
}

fn kronecker_dims_over<F: Field>(f: F) -> Result<(), String> {
    for m in 1..=4 {
        let t = kronecker(f, m);
        let dims = hh_dims(&t.algebra, 4, B).map_err(|e| e.to_string())?;
        ensure(dims == vec![1, m * m - 1, 0], || format!("K_{m} over {}: {dims:?}", f.spec()))?;
    }
    Ok(())
}

fn kronecker_dimensions() -> Outcome {
    kronecker_dims_over(Rationals)?;
    kronecker_dims_over(PrimeField::new(2).unwrap())?;
    Ok("HH(K_m) = [1, m²−1, 0] for m = 1..4 over Q and F_2".into())
}

fn scalar_sequence() -> Outcome {
    let k = ground(Rationals);
    let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
    let family = BimoduleFamily::simple(k.clone(), k, vec![m]).unwrap();
    let cones = FamilyCones::for_family(&family, 4, B).map_err(|e| e.to_string())?;
    let cone = cones.cone(&ConeShape::modified(&[0])).map_err(|e| e.to_string())?;
    let report = cone_les_report(&cone, &cones).map_err(|e| e.to_string())?;
    ensure(report.all_exact(), || "not exact at some interior node".into())?;
    let dims = report.dims();
    // Nodes: 0, Σ⁰, H⁰(cone), HH⁰A×HH⁰B, Σ¹ = Ext⁰(M,M), H¹(cone), …
    ensure(dims[2..6] == [1, 2, 4, 3], || format!("node dims {dims:?}"))?;
    let happel = happel_sequence(&cones, 0).map_err(|e| e.to_string())?;
    ensure(happel.all_exact(), || "single-bimodule sequence not exact".into())?;
    Ok(format!("exact at all {} interior nodes, dims {:?}", report.interior_count(), dims))
}

fn split_identity() -> Outcome {
    let k = ground(Rationals);
    let line = Arc::new(Bimodule::scalar_power(k.clone(), 1));
    for mult in 2..=4 {
        let family = BimoduleFamily::new(k.clone(), k.clone(), vec![line.clone()], vec![mult]).unwrap();
        let r = multiplicity_split_check(&family, 4, B).map_err(|e| e.to_string())?;
        ensure(r.holds() && r.identity_holds.len() == 3, || format!("multiplicity {mult}: {r:?}"))?;
    }
    let family = BimoduleFamily::new(k.clone(), k.clone(), vec![line.clone(), line], vec![2, 2]).unwrap();
    let r = multiplicity_split_check(&family, 4, B).map_err(|e| e.to_string())?;
    ensure(r.holds(), || format!("{{K, K}} with (2, 2): {r:?}"))?;
    // The sum with multiplicities is K⁴, so the middle term is HH of the Kronecker algebra K_4
    // built from its own structure constants.
    let direct = hh_dims(&kronecker(Rationals, 4).algebra, 4, B).map_err(|e| e.to_string())?;
    ensure(r.mid_dims == direct, || format!("{:?} vs direct {direct:?}", r.mid_dims))?;
    Ok(format!("multiplicities 2, 3, 4 and (2, 2) in degrees 0..2; HH[K K⁴; 0 K] = {direct:?}"))
}

fn mayer_vietoris() -> Outcome {
    let k = ground(Rationals);
    let line = Arc::new(Bimodule::scalar_power(k.clone(), 1));
    let family = BimoduleFamily::simple(k.clone(), k.clone(), vec![line.clone(), line.clone()]).unwrap();
    let cones = FamilyCones::for_family(&family, 4, B).map_err(|e| e.to_string())?;
    let mv = mayer_vietoris_sequence(&cones, &[0], &[1]).map_err(|e| e.to_string())?;
    ensure(mv.all_exact(), || "Mayer–Vietoris sequence not exact".into())?;
    ensure(mv.report.nodes.iter().all(|n| n.degree <= 2), || "window exceeds degree 2".into())?;
    let sub = subfamily_sequence(&cones, &[0, 1], &[0]).map_err(|e| e.to_string())?;
    ensure(sub.all_exact(), || "subfamily sequence not exact".into())?;
    let f = functoriality_check(&cones, &[0, 1], &[0], &[], &[1]).map_err(|e| e.to_string())?;
    ensure(f.all_hold(), || format!("{f:?}"))?;
    // A three-member cover with U_1 ∩ U_2 ⊆ U_0.
    let triple = BimoduleFamily::simple(k.clone(), k, vec![line.clone(), line.clone(), line]).unwrap();
    let cones3 = FamilyCones::for_family(&triple, 4, B).map_err(|e| e.to_string())?;
    let cover = cover_sequence(&cones3, &[0, 1, 2], &[vec![0], vec![0, 1], vec![0, 2]]).map_err(|e| e.to_string())?;
    ensure(cover.all_exact(), || "cover sequence not exact".into())?;
    Ok(format!(
        "exact at {} + {} + {} interior nodes; functoriality and section identities hold",
        mv.report.interior_count(),
        sub.report.interior_count(),
        cover.report.interior_count()
    ))
}

fn cone_equivalence() -> Outcome {
    let mut checked = 0;
    for (file, ws) in rational_corpus() {
        for (name, m) in &ws.bimodules {
            let dim_t = m.left_algebra().dim() + m.dim() + m.right_algebra().dim();
            if dim_t > 6 {
                continue;
            }
            let r = cone_equivalence_check(m, 4, B).map_err(|e| e.to_string())?;
            ensure(r.equal, || format!("{file}/{name}: cone {:?} vs bar {:?}", r.cone_dims, r.bar_dims))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} triangular algebras of dimension ≤ 6, degrees 0..2"))
}

fn lie_layer() -> Outcome {
    let mut algebras = 0;
    for (file, ws) in rational_corpus() {
        for (name, a) in &ws.algebras {
            let space = derivation_space(a);
            let dims = hh_dims(a, 3, B).map_err(|e| e.to_string())?;
            ensure(space.hh1_dim() == dims[1], || format!("{file}/{name}: {} vs {}", space.hh1_dim(), dims[1]))?;
            algebras += 1;
        }
    }
    let mut pairs = 0;
    for m in 2..=3 {
        let t = kronecker(Rationals, m);
        let space = derivation_space(&t.algebra);
        ensure(space.jacobi_holds(), || format!("Jacobi fails on K_{m}"))?;
        let parts = space
            .der_basis
            .iter()
            .map(|d| decompose_derivation(&t, d).map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        for (d, p) in space.der_basis.iter().zip(&parts) {
            ensure(p.recompose(&t) == *d, || format!("roundtrip fails on K_{m}"))?;
        }
        for x in &parts {
            for y in &parts {
                ensure(bracket_check(&t, x, y), || format!("blockwise bracket fails on K_{m}"))?;
                pairs += 1;
            }
        }
    }
    Ok(format!("HH¹ agrees on {algebras} algebras; bracket formula on {pairs} pairs of K_2, K_3"))
}

fn delta_membership() -> Outcome {
    let mut checked = 0;
    for (file, ws) in rational_corpus() {
        for (name, m) in &ws.bimodules {
            let own = delta_report(m, m).map_err(|e| e.to_string())?;
            ensure(own.member, || format!("{file}/{name} is not in its own class"))?;
            let free = Arc::new(Bimodule::free_rank_one(m.left_algebra().clone(), m.right_algebra().clone()));
            let r = delta_report(m, &free).map_err(|e| e.to_string())?;
            ensure(r.member, || format!("{file}/{name}: the free bimodule is not a member"))?;
            checked += 1;
        }
    }
    let k = ground(Rationals);
    let m = Arc::new(Bimodule::scalar_power(k.clone(), 2));
    let n = Arc::new(Bimodule::scalar_power(k, 1));
    let r = delta_report(&m, &n).map_err(|e| e.to_string())?;
    let seq = r.sequence.ok_or("no five-term sequence for K² and K")?;
    ensure(r.member && seq.all_exact(), || "five-term sequence not exact".into())?;
    let sum = seq.alternating_sum(0..seq.nodes.len());
    ensure(sum == 0, || format!("alternating sum {sum}"))?;
    Ok(format!("N = M and N = A⊗B^o are members for {checked} bimodules; five-term dims {:?}", seq.dims()))
}

fn series_over_corpus<F: Field>(ws: &[(String, Workspace<F>)]) -> Result<usize, String> {
    let mut checked = 0;
    for (file, ws) in ws {
        for (name, m) in &ws.bimodules {
            for mult in 1..=3 {
                let r = kronecker_series_check(m, mult, 3, B).map_err(|e| e.to_string())?;
                ensure(r.holds(), || format!("{file}/{name} with multiplicity {mult}: {} vs {}", r.lhs, r.rhs))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn modp_classes(p: u64) -> Result<usize, String> {
    let mut compared = 0;
    for (file, ws) in prime_corpus(p) {
        for (name, m) in &ws.bimodules {
            if m.dim() > 2 {
                continue;
            }
            let mults: Vec<usize> = (1..=4).collect();
            let family = multiplicity_family(m, &mults, 3, B).map_err(|e| e.to_string())?;
            let r = modp_periodicity_check(&family, p).map_err(|e| e.to_string())?;
            ensure(r.holds(), || format!("{file}/{name} mod {p}: {:?}", r.comparisons))?;
            // The compared pairs are exactly those with equal squares mod p.
            let expected: Vec<(usize, usize)> = mults
                .iter()
                .flat_map(|&a| mults.iter().map(move |&b| (a, b)))
                .filter(|(a, b)| a < b && (a * a) as u64 % p == (b * b) as u64 % p)
                .collect();
            let got: Vec<(usize, usize)> = r.comparisons.iter().map(|(a, b, _)| (*a, *b)).collect();
            ensure(got == expected, || format!("{file}/{name}: compared {got:?}, expected {expected:?}"))?;
            compared += got.len();
        }
    }
    Ok(compared)
}

fn series_layer() -> Outcome {
    let checked = series_over_corpus(&rational_corpus())?;
    let k2 = modp_classes(2)?;
    let k3 = modp_classes(3)?;
    Ok(format!("{checked} series identities over Q; {k2} comparisons mod 2, {k3} mod 3"))
}

fn complexes_on<F: Field>(ws: &Workspace<F>) -> Result<usize, String> {
    let err = |e: hhlab::Error| e.to_string();
    let mut count = 0;
    for a in ws.algebras.values() {
        for normalized in [true, false] {
            let c = bar_cochain_complex(a, &Bimodule::regular(a.clone()), 4, normalized, B).map_err(err)?;
            ensure(c.is_complex(), || "bar complex".into())?;
            count += 1;
        }
    }
    for m in ws.bimodules.values() {
        ensure(ext_complex(m, m, 4, B).map_err(err)?.is_complex(), || "Ext complex".into())?;
        ensure(relative_bar(m, 4, B).map_err(err)?.is_complex(), || "relative bar complex".into())?;
        let tri = triangular_cochain(m, m, 4, B).map_err(err)?;
        ensure(tri.complex.is_complex(), || "triangular complex".into())?;
        let t = TriangularAlgebra::new(m.clone());
        let c = bar_cochain_complex(&t.algebra, &Bimodule::regular(t.algebra.clone()), 4, true, B).map_err(err)?;
        ensure(c.is_complex(), || "bar complex of the triangular algebra".into())?;
        let single = BimoduleFamily::simple(m.left_algebra().clone(), m.right_algebra().clone(), vec![m.clone()]).map_err(err)?;
        let cones = FamilyCones::for_family(&single, 4, B).map_err(err)?;
        ensure(cones.cone(&ConeShape::modified(&[0])).map_err(err)?.complex().is_complex(), || "cone".into())?;
        ensure(happel_sequence(&cones, 0).map_err(err)?.all_exact(), || "single-bimodule sequence".into())?;
        count += 6;
    }
    for family in ws.families.values() {
        let cones = FamilyCones::for_family(family, 4, B).map_err(err)?;
        let all = cones.all();
        ensure(cones.cone(&ConeShape::modified(&all)).map_err(err)?.complex().is_complex(), || "family cone".into())?;
        ensure(cones.cone(&ConeShape::full(&all)).map_err(err)?.complex().is_complex(), || "full cone".into())?;
        if all.len() >= 2 {
            let (f, g) = (vec![all[0]], all[1..].to_vec());
            ensure(mayer_vietoris_sequence(&cones, &f, &g).map_err(err)?.all_exact(), || "Mayer–Vietoris".into())?;
            ensure(subfamily_sequence(&cones, &all, &f).map_err(err)?.all_exact(), || "subfamily".into())?;
        }
        count += 2;
    }
    Ok(count)
}

fn deterministic_runs() -> Result<usize, String> {
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate"],
        vec!["hh", "--algebra", "K"],
        vec!["lie", "der", "--algebra", "K"],
        vec!["series", "poincare", "--algebra", "K"],
    ];
    let mut runs = 0;
    for file in CORPUS {
        let path = corpus_path(file).display().to_string();
        for cmd in &commands {
            let argv: Vec<&str> =
                std::iter::once("hhlab").chain(cmd.iter().copied()).chain(["--input", &path, "--out", "json"]).collect();
            let mut outputs = Vec::new();
            for _ in 0..2 {
                let (mut out, mut err) = (Vec::new(), Vec::new());
                let code = run(argv.clone(), &mut out, &mut err);
                ensure(code == 0, || format!("{argv:?} exited {code}: {}", String::from_utf8_lossy(&err)))?;
                outputs.push(out);
            }
            ensure(outputs[0] == outputs[1], || format!("{argv:?} differs between runs"))?;
            runs += 1;
        }
    }
    Ok(runs)
}

fn property_suite() -> Outcome {
    let mut count = 0;
    for (_, ws) in rational_corpus() {
        count += complexes_on(&ws)?;
    }
    for (_, ws) in prime_corpus(2) {
        count += complexes_on(&ws)?;
    }
    let runs = deterministic_runs()?;
    Ok(format!("{count} complexes and sequences over Q and F_2; {runs} commands byte-identical across two runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("Kronecker dimensions", kronecker_dimensions),
        ("long exact sequence of one bimodule", scalar_sequence),
        ("multiplicity split identity", split_identity),
        ("Mayer–Vietoris and cover sequences", mayer_vietoris),
        ("cone complex against bar complex", cone_equivalence),
        ("derivation Lie algebras", lie_layer),
        ("restriction class membership", delta_membership),
        ("Poincaré series identities", series_layer),
        ("property suite and determinism", property_suite),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(reason) => {
                failures += 1;
                println!("FAIL {} {name}: {reason} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
