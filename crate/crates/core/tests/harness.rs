use std::process::Command;

use ea_diversity::harness::{
    read_records, records_to_csv, render_svg, run_experiment, run_replication, summarize, AlgorithmKind,
    ExperimentConfig,
};

fn small(algorithm: AlgorithmKind, n: &[usize], runs: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::for_algorithm(algorithm);
    cfg.n_values = n.to_vec();
    cfg.runs = runs;
    cfg.seed = 31;
    cfg
}

#[test]
fn records_do_not_depend_on_thread_count() {
    for algo in [AlgorithmKind::Ga, AlgorithmKind::Nsga2, AlgorithmKind::SmsEmoa] {
        let mut cfg = small(algo, &[10, 12], 6);
        let serial = run_experiment(&cfg).unwrap();
        cfg.jobs = 3;
        let parallel = run_experiment(&cfg).unwrap();
        assert_eq!(records_to_csv(&serial).unwrap(), records_to_csv(&parallel).unwrap());
    }
}

#[test]
fn each_record_replays_alone() {
    let cfg = small(AlgorithmKind::SmsEmoa, &[10], 4);
    let records = run_experiment(&cfg).unwrap();
    let cells = cfg.cells().unwrap();
    for r in &records {
        let cell = cells.iter().find(|c| c.diversity == r.diversity).unwrap();
        assert_eq!(&run_replication(cell, r.run, &mut ()).unwrap(), r);
    }
}

#[test]
fn evaluation_accounting() {
    let mut cfg = small(AlgorithmKind::Nsga2, &[12], 5);
    cfg.max_evaluations = 1_000;
    let mu = cfg.cells().unwrap()[0].mu as u64;
    for r in run_experiment(&cfg).unwrap() {
        assert!(r.evaluations >= mu && r.evaluations <= cfg.max_evaluations);
        // initial population plus whole generations
        assert_eq!(r.evaluations % mu, 0);
        if !r.success {
            assert!(r.evaluations + mu > cfg.max_evaluations);
        }
    }

    let mut cfg = small(AlgorithmKind::Ga, &[20], 5);
    cfg.max_evaluations = 500;
    cfg.diversity = "off".parse().unwrap();
    for r in run_experiment(&cfg).unwrap() {
        assert_eq!(r.success, r.evaluations < 500);
        assert!(r.evaluations <= 500);
    }
}

#[test]
fn csv_round_trip() {
    let mut records = run_experiment(&small(AlgorithmKind::Nsga2, &[10], 3)).unwrap();
    records.extend(run_experiment(&small(AlgorithmKind::Ga, &[10], 3)).unwrap());
    let bytes = records_to_csv(&records).unwrap();
    let text = String::from_utf8(bytes.clone()).unwrap();
    assert!(text.starts_with("algo,problem,n,k,mu,pc,diversity,selection,run,seed,evaluations,success\n"));
    assert_eq!(read_records(bytes.as_slice()).unwrap(), records);
}

#[test]
fn chart_is_self_contained_svg() {
    let mut records = run_experiment(&small(AlgorithmKind::Ga, &[10, 12, 14], 4)).unwrap();
    records.extend(run_experiment(&small(AlgorithmKind::SmsEmoa, &[10, 12], 3)).unwrap());
    let svg = render_svg(&summarize(&records));
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let lines = root.descendants().filter(|n| n.has_tag_name("polyline")).count();
    assert_eq!(lines, 4);
    assert!(!svg.contains("href") && !svg.contains("url("));
}

#[test]
fn empty_summary_still_renders() {
    roxmltree::Document::parse(&render_svg(&[])).unwrap();
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ea-diversity"))
}

#[test]
fn cli_writes_csv_and_chart() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("runs.csv");
    let plot = dir.path().join("runs.svg");
    let status = cli()
        .args(["--algo", "sms-emoa", "--n", "10,12", "--k", "2", "--runs", "3", "--seed", "5"])
        .args(["--diversity", "both", "--jobs", "2", "--max-evals", "1000000"])
        .arg("--out")
        .arg(&out)
        .arg("--plot")
        .arg(&plot)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let records = read_records(std::fs::File::open(&out).unwrap()).unwrap();
    assert_eq!(records.len(), 12);
    assert!(records.iter().all(|r| r.k == 2 && r.mu == 2 * (r.n - 4 + 3)));
    roxmltree::Document::parse(&std::fs::read_to_string(&plot).unwrap()).unwrap();
    assert!(String::from_utf8_lossy(&status.stdout).contains("sms-emoa"));
}

#[test]
fn cli_reads_config_file_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("sweep.conf");
    std::fs::write(&config, "# small sweep\nalgo=nsga2\nn=10\nruns=2\nselection=tournament\ndiversity=on\n").unwrap();
    let output = cli().arg("--config").arg(&config).args(["--runs", "3"]).output().unwrap();
    assert!(output.status.success());
    let records = read_records(output.stdout.as_slice()).unwrap();
    assert_eq!(records.len(), 3);
    assert!(records.iter().all(|r| r.diversity && r.selection.map(|s| s.as_str()) == Some("tournament")));
}

#[test]
fn cli_rejects_bad_input() {
    for args in [&["--algo", "ga", "--problem", "ojzj"][..], &["--runs", "0"], &["--pc", "2"], &["--n", "ten"]] {
        let output = cli().args(args).output().unwrap();
        assert!(!output.status.success(), "{args:?} should fail");
        assert!(!output.stderr.is_empty());
    }
    let missing = cli().args(["--config", "/nonexistent/settings"]).output().unwrap();
    assert!(!missing.status.success());
}
