use std::fs;
use std::path::Path;

use wordlen::corpus::{
    analyze_corpus, group_means, load_manifest, read_results, write_results, ResultFormat,
    TextResult, RESULT_COLUMNS,
};
use wordlen::estimate::{fit_text, goodness_of_fit};
use wordlen::model::{mixture_pmf, ModelParams};
use wordlen::synth::{generate_rank_spectrum, pseudo_corpus, sample_lengths, SynthConfig};
use wordlen::textproc::{tokenize_stream, LanguageRules, RuleRegistry};
use wordlen::Error;

fn synthetic_text(l0: f64, l1: f64, tokens: u64, types: usize, seed: u64) -> String {
    let params = ModelParams::with_default_min(l0, l1).unwrap();
    let spec = generate_rank_spectrum(&SynthConfig::new(params, tokens, types, seed)).unwrap();
    pseudo_corpus(&spec, seed)
}

fn write_corpus(dir: &Path) {
    fs::write(dir.join("a.txt"), synthetic_text(1.7, 1.0, 4000, 300, 1)).unwrap();
    fs::write(dir.join("b.txt"), synthetic_text(2.2, 1.2, 4000, 300, 2)).unwrap();
    fs::write(dir.join("c.txt"), synthetic_text(1.9, 0.9, 4000, 300, 3)).unwrap();
    fs::write(
        dir.join("short.txt"),
        "der Hund und der Garten und der Hund schläft im Garten",
    )
    .unwrap();
}

#[test]
fn fit_recovers_alpha_from_pseudo_corpus() {
    let rules = LanguageRules::builtin("de").unwrap();
    let text = synthetic_text(2.0, 1.0, 200_000, 2000, 42);
    let fit = fit_text(&tokenize_stream("s", &text, &rules), &rules, 0.5).unwrap();
    // alpha at (2, 1) with lower limit 0.5 is 2/3
    assert!(
        (fit.invariants.alpha - 2.0 / 3.0).abs() < 0.1,
        "alpha {}",
        fit.invariants.alpha
    );
    assert!((fit.params.lambda0() - 2.0).abs() < 0.05);
    assert!(!fit.unreliable);
}

#[test]
fn iid_sample_chi_square_is_moderate() {
    let params = ModelParams::with_default_min(2.0, 1.0).unwrap();
    let sample = sample_lengths(&params, 100_000, 8).unwrap();
    let (chi, dof) = goodness_of_fit(&sample, &params).unwrap();
    let ratio = chi / dof as f64;
    assert!((0.3..=3.0).contains(&ratio), "chi {chi} on {dof} dof");
}

#[test]
fn sampler_matches_pmf_everywhere() {
    for (l0, l1) in [(2.0, 1.0), (1.4, 0.6), (3.5, 2.5)] {
        let params = ModelParams::with_default_min(l0, l1).unwrap();
        let n = 1_000_000;
        let sample = sample_lengths(&params, n, 17).unwrap();
        let kmax = sample.max_length().unwrap().max(30);
        for k in 1..=kmax {
            let emp = sample.count(k) as f64 / n as f64;
            let exact = mixture_pmf(k, &params).unwrap();
            assert!(
                (emp - exact).abs() < 0.005,
                "({l0}, {l1}) k = {k}: {emp} vs {exact}"
            );
        }
    }
}

#[test]
fn batch_keeps_order_and_embeds_errors() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let manifest = dir.path().join("manifest.csv");
    fs::write(
        &manifest,
        "text_id,path,language,genre\nc,c.txt,de,letters\ngone,nowhere.txt,de,letters\na,a.txt,de,essay\nshort,short.txt,de,essay\nb,b.txt,en,letters\n",
    )
    .unwrap();
    let reg = RuleRegistry::default();
    let entries = load_manifest(&manifest, &reg).unwrap();
    assert_eq!(entries[0].path, dir.path().join("c.txt"));
    let results = analyze_corpus(&entries, &reg, 0.5);
    let ids: Vec<_> = results.iter().map(|r| r.text_id.as_str()).collect();
    assert_eq!(ids, ["c", "gone", "a", "short", "b"]);
    assert!(results[1]
        .outcome
        .as_ref()
        .unwrap_err()
        .contains("nowhere.txt"));
    assert!(results[3].metrics().unwrap().unreliable);
    assert!(results[3].reliable_metrics().is_none());

    let means = group_means(&results);
    // c, gone, a and short; only c and a are reliable
    assert_eq!(means.languages["de"].count, 2);
    assert_eq!(means.languages["en"].count, 1);
    assert_eq!(means.genres["essay"].count, 1);
    let a_alpha = results[2].metrics().unwrap().alpha;
    assert_eq!(means.genres["essay"].mean, Some(a_alpha));
}

#[test]
fn results_round_trip_through_csv_and_json() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let manifest = dir.path().join("manifest.json");
    fs::write(
        &manifest,
        r#"[{"text_id":"a","path":"a.txt","language":"de","genre":"letters"},
            {"text_id":"x","path":"missing.txt","language":"fr","genre":"essay"}]"#,
    )
    .unwrap();
    let reg = RuleRegistry::default();
    let results = analyze_corpus(&load_manifest(&manifest, &reg).unwrap(), &reg, 0.5);

    let csv = dir.path().join("out.csv");
    write_results(&results, &csv, ResultFormat::Csv).unwrap();
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next().unwrap(), RESULT_COLUMNS.join(","));
    let back = read_results(&csv).unwrap();
    assert_eq!(back.len(), 2);
    assert!(back[1].outcome.is_err());
    let (orig, read) = (results[0].metrics().unwrap(), back[0].metrics().unwrap());
    assert!((orig.i_lang - read.i_lang).abs() <= 5e-7);
    assert!((orig.alpha - read.alpha).abs() <= 5e-7);
    assert_eq!(orig.n_tokens, read.n_tokens);

    let json = dir.path().join("out.json");
    write_results(&results, &json, ResultFormat::Json).unwrap();
    let from_json = read_results(&json).unwrap();
    assert_eq!(from_json, back);
}

#[test]
fn manifest_validation() {
    let dir = tempfile::tempdir().unwrap();
    let reg = RuleRegistry::default();
    let m = dir.path().join("m.csv");

    fs::write(
        &m,
        "text_id,path,language,genre\na,a.txt,de,x\na,b.txt,de,x\n",
    )
    .unwrap();
    assert!(matches!(load_manifest(&m, &reg), Err(Error::DuplicateId(id)) if id == "a"));

    fs::write(&m, "text_id,path,language,genre\na,a.txt,tlh,x\n").unwrap();
    assert!(matches!(load_manifest(&m, &reg), Err(Error::UnknownLanguage(l)) if l == "tlh"));

    fs::write(
        &m,
        "text_id,path,language,genre\na,a.txt,de,x\nb,b.txt,,x\n",
    )
    .unwrap();
    assert!(matches!(
        load_manifest(&m, &reg),
        Err(Error::Parse { line: 3, .. })
    ));

    fs::write(&m, "id,file,lang\n").unwrap();
    assert!(matches!(
        load_manifest(&m, &reg),
        Err(Error::Parse { line: 1, .. })
    ));

    fs::write(&m, "text_id,path,language,genre\n").unwrap();
    let entries = load_manifest(&m, &reg).unwrap();
    assert!(entries.is_empty());
    assert!(analyze_corpus(&entries, &reg, 0.5).is_empty());
}

#[test]
fn group_means_ignore_row_order() {
    let dir = tempfile::tempdir().unwrap();
    write_corpus(dir.path());
    let manifest = dir.path().join("manifest.csv");
    fs::write(
        &manifest,
        "text_id,path,language,genre\na,a.txt,de,letters\nb,b.txt,de,letters\nc,c.txt,de,essay\n",
    )
    .unwrap();
    let reg = RuleRegistry::default();
    let results = analyze_corpus(&load_manifest(&manifest, &reg).unwrap(), &reg, 0.5);
    let mut reversed: Vec<TextResult> = results.clone();
    reversed.reverse();
    assert_eq!(group_means(&results), group_means(&reversed));
    assert_eq!(group_means(&results).languages["de"].count, 3);
}
