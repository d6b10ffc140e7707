use std::process::Command;

use agcurve_cli::output::{parse_verify_lines, CodeOutput, CurveOutput, DecodeOutput, ExperimentOutput, PdsetOutput, VerifyLine};

fn agcurve(args: &[&str]) -> (String, i32) {
    agcurve_env(args, &[])
}

fn agcurve_env(args: &[&str], env: &[(&str, &str)]) -> (String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_agcurve"));
    cmd.args(args).env_remove("AGCURVE_CAP_CODEWORDS");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("run agcurve");
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

const PUBLISHED_G7: [[&str; 7]; 3] = [
    ["1", "0", "0", "2", "5", "1", "5"],
    ["0", "1", "0", "1", "5", "5", "2"],
    ["0", "0", "1", "5", "5", "2", "1"],
];

#[test]
fn curve_p7_over_gf49() {
    let (out, code) = agcurve(&["curve", "-p", "7", "-ext", "2"]);
    assert_eq!(code, 0);
    let c: CurveOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(c.orbits, vec![8, 84]);
    assert_eq!(c.group_order, 672);
    assert_eq!(c.stabilizers, vec![84, 8]);
    assert_eq!(c.places, 92);
    assert_eq!(c.config.p, Some(7));
    assert_eq!(c.config.ext, Some(2));
}

#[test]
fn curve_p3_over_gf3_has_four_places() {
    let (out, code) = agcurve(&["curve", "-p", "3", "-ext", "1"]);
    assert_eq!(code, 0);
    let c: CurveOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(c.places, 4);
}

#[test]
fn curve_p11_orbit_sizes_match_formulas() {
    let (out, code) = agcurve(&["curve", "-p", "11", "-ext", "2"]);
    assert_eq!(code, 0);
    let c: CurveOutput = serde_json::from_str(&out).unwrap();
    let p = 11;
    assert_eq!(c.orbits, vec![p + 1, 2 * p * (p - 1)]);
    assert_eq!(c.places, c.orbits.iter().sum::<usize>());
}

#[test]
fn code_p7_m5_is_the_7_3_5_code() {
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5"]);
    assert_eq!(code, 0);
    let c: CodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!((c.n, c.k, c.d), (7, 3, 5));
    assert!(c.mds);
    assert_eq!(c.standard_form, PUBLISHED_G7.map(|r| r.map(String::from).to_vec()).to_vec());
    assert_eq!(c.columns, (1..=7).collect::<Vec<_>>());
    assert_eq!(c.weights.iter().sum::<u64>(), 343);
}

#[test]
fn pdset_p13_w4_is_certified() {
    let (out, code) = agcurve(&["code", "-p", "13", "-m", "8", "pdset", "-w", "4", "--trials", "50"]);
    assert_eq!(code, 0);
    let r: PdsetOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(r.code, [13, 5, 9]);
    let report = r.report.expect("pd-set found");
    assert_eq!(report.certified_weight, Some(4));
    assert!(r.verification.unwrap().ok);
    let exp = report.experiment.unwrap();
    assert!(exp.per_weight.values().all(|s| s.success_rate == 1.0));
}

#[test]
fn pdset_failure_exits_4() {
    // five errors never fit in the four redundancy positions
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5", "pdset", "-w", "5", "--trials", "1"]);
    assert_eq!(code, 4);
    let r: PdsetOutput = serde_json::from_str(&out).unwrap();
    assert!(r.report.is_none());
    assert!(r.uncovered > 0);
}

#[test]
fn decode_zero_word() {
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5", "decode", "--received", "0,0,0,0,0,0,0"]);
    assert_eq!(code, 0);
    let d: DecodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(d.decoded, Some(vec!["0".to_string(); 7]));
    assert_eq!(d.tried, 1);
}

#[test]
fn decode_corrects_two_errors() {
    // first row of the standard form with positions 1 and 2 corrupted
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5", "decode", "--received", "4,3,0,2,5,1,5"]);
    assert_eq!(code, 0);
    let d: DecodeOutput = serde_json::from_str(&out).unwrap();
    let expected: Vec<String> = PUBLISHED_G7[0].iter().map(|s| s.to_string()).collect();
    assert_eq!(d.decoded, Some(expected));
    assert!(d.tried > 1);
}

#[test]
fn decode_rejects_wrong_length() {
    let (_, code) = agcurve(&["code", "-p", "7", "-m", "5", "decode", "--received", "0,0"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_without_suites_passes_with_zero_checks() {
    let (out, code) = agcurve(&["verify"]);
    assert_eq!(code, 0);
    let lines = parse_verify_lines(&out).unwrap();
    assert_eq!(lines.len(), 2);
    match &lines[1] {
        VerifyLine::Summary { summary } => {
            assert_eq!(summary.checks, 0);
            assert_eq!(summary.failed, 0);
        }
        other => panic!("expected summary, got {other:?}"),
    }
}

#[test]
fn verify_7_3_5_suite_passes() {
    let (out, code) = agcurve(&["verify", "paper-7-3-5"]);
    assert_eq!(code, 0);
    let lines = parse_verify_lines(&out).unwrap();
    assert!(matches!(lines[0], VerifyLine::Config { .. }));
    let checks: Vec<_> = lines
        .iter()
        .filter_map(|l| match l {
            VerifyLine::Check(c) => Some(c),
            _ => None,
        })
        .collect();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c.pass));
}

#[test]
fn verify_filtration_p7_quotients_bounded_by_8() {
    let (out, code) = agcurve(&["verify", "filtration", "-p", "7"]);
    assert_eq!(code, 0);
    let lines = parse_verify_lines(&out).unwrap();
    let mut seen = 0;
    for line in &lines {
        if let VerifyLine::Check(c) = line {
            if let Some(cases) = c.detail.get("cases").and_then(|v| v.as_array()) {
                for case in cases {
                    for d in case["differences"].as_array().unwrap() {
                        assert!(d.as_u64().unwrap() <= 8);
                        seen += 1;
                    }
                }
            }
        }
    }
    assert!(seen > 0);
}

#[test]
fn verify_failing_suite_exits_4() {
    let (out, code) = agcurve(&["verify", "deviations"]);
    assert_eq!(code, 4);
    let lines = parse_verify_lines(&out).unwrap();
    match lines.last().unwrap() {
        VerifyLine::Summary { summary } => assert_eq!(summary.failed, summary.checks),
        other => panic!("expected summary, got {other:?}"),
    }
}

#[test]
fn unknown_suite_exits_2() {
    assert_eq!(agcurve(&["verify", "no-such-suite"]).1, 2);
}

#[test]
fn invalid_p_exits_2() {
    assert_eq!(agcurve(&["curve", "-p", "9"]).1, 2);
    assert_eq!(agcurve(&["curve", "-p", "2"]).1, 2);
    assert_eq!(agcurve(&["curve", "-p", "23", "-ext", "2"]).1, 2);
    assert_eq!(agcurve(&["curve", "-p", "7", "-ext", "3"]).1, 2);
    assert_eq!(agcurve(&["curve"]).1, 2);
}

#[test]
fn codeword_cap_exits_3() {
    let (_, code) = agcurve_env(&["code", "-p", "7", "-m", "5"], &[("AGCURVE_CAP_CODEWORDS", "100")]);
    assert_eq!(code, 3);
    let (out, code) = agcurve_env(&["code", "-p", "7", "-m", "5"], &[("AGCURVE_CAP_CODEWORDS", "343")]);
    assert_eq!(code, 0);
    let c: CodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(c.config.cap_codewords, 343);
}

#[test]
fn help_exits_0() {
    let (out, code) = agcurve(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("Usage"));
}

#[test]
fn same_config_gives_identical_output() {
    let args = ["code", "-p", "13", "-m", "8", "pdset", "-w", "4", "--trials", "30", "--seed", "9"];
    let (a, _) = agcurve(&args);
    let (b, _) = agcurve(&args);
    assert_eq!(a, b);
    let mut threaded = args.to_vec();
    threaded.extend(["--threads", "3"]);
    let (c, _) = agcurve(&threaded);
    let strip = |s: &str| {
        let mut r: PdsetOutput = serde_json::from_str(s).unwrap();
        r.config.threads = 0;
        r
    };
    assert_eq!(strip(&a), strip(&c));
}

#[test]
fn json_outputs_round_trip() {
    let (out, _) = agcurve(&["curve", "-p", "5", "-ext", "2"]);
    let c: CurveOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&c).unwrap() + "\n", out);

    let (out, _) = agcurve(&["code", "-p", "5", "-m", "3"]);
    let c: CodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&c).unwrap() + "\n", out);

    let (out, _) = agcurve(&["code", "-p", "5", "-m", "3", "decode", "--received", "1,1,1,1,1"]);
    let d: DecodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(serde_json::to_string_pretty(&d).unwrap() + "\n", out);

    let (out, _) = agcurve(&["experiment", "-p", "5", "--trials", "20"]);
    let e: ExperimentOutput = serde_json::from_str(&out).unwrap();
    assert!(e.report.is_some());
    assert_eq!(serde_json::to_string_pretty(&e).unwrap() + "\n", out);

    let (out, _) = agcurve(&["verify", "separation"]);
    let lines = parse_verify_lines(&out).unwrap();
    let again: String = lines.iter().map(|l| serde_json::to_string(l).unwrap() + "\n").collect();
    assert_eq!(again, out);
}

#[test]
fn experiment_single_orbit_is_skipped() {
    let (out, code) = agcurve(&["experiment", "-p", "5", "-ext", "2", "--trials", "5"]);
    assert_eq!(code, 0);
    let e: ExperimentOutput = serde_json::from_str(&out).unwrap();
    assert!(e.report.is_none());
    assert!(e.skipped.is_some());
}

#[test]
fn gf49_code_uses_curve_group() {
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "4", "-ext", "2", "pdset", "-w", "2", "--trials", "5"]);
    let r: PdsetOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(r.config.group, Some(agcurve_cli::args::GroupChoice::Curve));
    assert_eq!(r.code[..2], [91, 3]);
    assert_eq!(code, if r.report.is_some() { 0 } else { 4 });
}

#[test]
fn out_dir_receives_code_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5", "--out", d]);
    assert_eq!(code, 0);
    let c: CodeOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(c.files.len(), 3);
    let (read, sidecar) = agcurve::agcode::read_code_files(dir.path(), "code-p7-m5-ext1").unwrap();
    assert_eq!((read.n(), read.k()), (7, 3));
    assert_eq!(sidecar.d, Some(5));
    let matrix = std::fs::read_to_string(dir.path().join("code-p7-m5-ext1.matrix.txt")).unwrap();
    assert!(matrix.starts_with("GF 7 1 3 7\n"));

    let (_, code) = agcurve(&["code", "-p", "7", "-m", "5", "pdset", "-w", "2", "--group", "full", "--trials", "5", "--out", d]);
    assert_eq!(code, 0);
    assert!(dir.path().join("pdset.json").exists());
}

#[test]
fn text_and_csv_formats() {
    let (out, code) = agcurve(&["code", "-p", "7", "-m", "5", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("[7, 3, 5] code (MDS)"));
    let (out, _) = agcurve(&["code", "-p", "7", "-m", "5", "--format", "csv"]);
    let parsed = agcurve::agcode::parse_weights_csv(&out).unwrap();
    assert_eq!(parsed, vec![1, 0, 0, 0, 0, 126, 84, 132]);
    let (out, _) = agcurve(&["curve", "-p", "7", "--format", "csv"]);
    assert_eq!(out.lines().count(), 3);
}
