use eitsqueeze::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("eitsqueeze").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn spectrum_shape() {
    let (code, out, _) = invoke(&[
        "spectrum",
        "--formula",
        "matched",
        "--phase",
        "optimized",
        "--omega",
        "-2e6:2e6:401",
    ]);
    assert_eq!(code, 0);
    let header = out.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "omega,t_mag,variance,classification");
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 401);
    assert!(rows.iter().all(|r| r.len() == 4));
    assert!(out.contains("# config_hash = "));
    assert!(out.contains("# phase_mode = optimized"));
    for r in &rows {
        assert!(["strong", "weak", "none"].contains(&r[3].as_str()));
        // 17 significant digits
        assert_eq!(
            r[1].split('e')
                .next()
                .unwrap()
                .trim_start_matches('-')
                .len(),
            18
        );
    }
}

#[test]
fn thresholds_summary() {
    let (code, out, _) = invoke(&["thresholds", "--omega", "5e4"]);
    assert_eq!(code, 0);
    let value = |key: &str| -> f64 {
        out.lines()
            .find(|l| l.starts_with(key))
            .and_then(|l| l.split('=').nth(1))
            .unwrap()
            .trim()
            .parse()
            .unwrap()
    };
    assert!((value("mismatched weak_threshold") - 0.600).abs() <= 0.005);
    assert!((value("mismatched strong_threshold") - 0.756).abs() <= 0.01);
    assert!((value("matched strong_threshold") - 0.730).abs() <= 0.01);
}

#[test]
fn fiber_match_length() {
    let (code, out, _) = invoke(&["fiber-match"]);
    assert_eq!(code, 0);
    let line = out
        .lines()
        .find(|l| l.starts_with("matched_fiber_length"))
        .unwrap();
    let l: f64 = line
        .split('=')
        .nth(1)
        .unwrap()
        .trim()
        .trim_end_matches(" m")
        .parse()
        .unwrap();
    assert!((l - 3.04e3).abs() / 3.04e3 < 0.01);
}

#[test]
fn transmission_scan_rows() {
    let (code, out, _) = invoke(&[
        "transmission-scan",
        "--formula",
        "mismatched",
        "--t",
        "0:1:11",
    ]);
    assert_eq!(code, 0);
    let rows = data_rows(&out);
    assert_eq!(rows.len(), 11);
    assert_eq!(rows[0][2], "none");
    assert_eq!(rows[10][2], "strong");
}

#[test]
fn exit_codes() {
    assert_eq!(invoke(&[]).0, 2);
    assert_eq!(invoke(&["spectrum", "--omega", "1:2"]).0, 2);
    assert_eq!(invoke(&["--set", "kappa=2e7", "window"]).0, 2);
    assert_eq!(invoke(&["--set", "kappa=abc", "window"]).0, 2);
    assert_eq!(invoke(&["--set", "nope=1", "window"]).0, 2);
    assert_eq!(invoke(&["--formula", "sideways", "spectrum"]).0, 2);
    assert_eq!(
        invoke(&["--config", "/nonexistent/eitsqueeze.conf", "window"]).0,
        4
    );
    // the window level is out of reach of the line-center transmission
    assert_eq!(invoke(&["window", "--level", "0.9"]).0, 3);
    // transmission grid beyond 1
    assert_eq!(invoke(&["transmission-scan", "--t", "0:2:3"]).0, 2);
    assert_eq!(invoke(&["--help"]).0, 0);
}

#[test]
fn usage_error_prints_usage() {
    let (_, _, err) = invoke(&["spectrum", "--bogus"]);
    assert!(err.contains("Usage"));
}

#[test]
fn config_file_parse_error_names_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "gamma = 4e7\n\nkappa = abc\n").unwrap();
    let (code, _, err) = invoke(&["--config", path.to_str().unwrap(), "dump-params"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn dump_params_reloads() {
    let (code, dumped, _) = invoke(&["--set", "l_f=2000", "--phase", "fixed", "dump-params"]);
    assert_eq!(code, 0);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.conf");
    std::fs::write(&path, &dumped).unwrap();
    let (code, again, _) = invoke(&["--config", path.to_str().unwrap(), "dump-params"]);
    assert_eq!(code, 0);
    assert_eq!(again, dumped);
    assert!(dumped.contains("phase_mode = fixed"));
}

#[test]
fn oracle_check_with_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.csv");
    let (code, out, _) = invoke(&[
        "oracle-check",
        "--omega",
        "-1e6:1e6:11",
        "--phi",
        "0:3:4",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("PASS").count(), 3);
    assert_eq!(
        data_rows(&std::fs::read_to_string(&path).unwrap()).len(),
        44
    );
}

#[test]
fn figures_written_and_unwritable_target() {
    let dir = tempfile::tempdir().unwrap();
    let (code, _, _) = invoke(&["figures", "--outdir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    for name in ["fig3a", "fig3b", "fig4a", "fig4b"] {
        let body = std::fs::read_to_string(dir.path().join(format!("{name}.csv"))).unwrap();
        assert!(body.contains(&format!("# eitsqueeze = {name}")));
        assert!(body.contains("# kappa = 1.2e7"));
    }
    let fig4a = data_rows(&std::fs::read_to_string(dir.path().join("fig4a.csv")).unwrap());
    let v: Vec<f64> = fig4a.iter().map(|r| r[1].parse().unwrap()).collect();
    let t: Vec<f64> = fig4a.iter().map(|r| r[0].parse().unwrap()).collect();
    let k = v
        .windows(2)
        .position(|w| w[0] >= 0.5 && w[1] < 0.5)
        .unwrap();
    assert!(t[k] <= 0.6 && t[k + 1] >= 0.6 && t[k + 1] - t[k] < 0.011);
    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "x").unwrap();
    let (code, _, _) = invoke(&["figures", "--outdir", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(code, 4);
}
