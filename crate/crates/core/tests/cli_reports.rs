use varwell::cli::run;

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("varwell").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn threshold_energy_of_odd_harmonic_state() {
    let (code, out) = invoke(&[
        "energy",
        "--well",
        "gaussian",
        "--v0",
        "1.9485572",
        "--state",
        "1",
        "--method",
        "harmonic",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("v0,state,method,a_opt,energy\n"));
    let row = &rows(&out)[0];
    let a: f64 = row[3].parse().unwrap();
    let w: f64 = row[4].parse().unwrap();
    assert!((a - 0.25).abs() < 1e-6 && w.abs() <= 1e-6, "{out}");
}

#[test]
fn ground_crossing_report() {
    let (code, out) = invoke(&["crossing", "--state", "0"]);
    assert_eq!(code, 0);
    let row = &rows(&out)[0];
    let (v, lo, hi): (f64, f64, f64) = (
        row[1].parse().unwrap(),
        row[2].parse().unwrap(),
        row[3].parse().unwrap(),
    );
    assert!(lo < v && v < hi && hi - lo <= 1e-5);
}

#[test]
fn numerov_sweep_deepens_monotonically() {
    let (code, out) = invoke(&[
        "sweep",
        "--well",
        "gaussian",
        "--v0-min",
        "0.5",
        "--v0-max",
        "8",
        "--points",
        "4",
        "--states",
        "0",
        "--methods",
        "numerov",
    ]);
    assert_eq!(code, 0);
    let energies: Vec<f64> = rows(&out).iter().map(|r| r[4].parse().unwrap()).collect();
    assert_eq!(energies.len(), 4);
    assert!(energies.windows(2).all(|w| w[1] < w[0]));
    assert!(rows(&out).iter().all(|r| r[3].is_empty()));
}

#[test]
fn sweep_rows_are_ordered() {
    let (code, out) = invoke(&[
        "sweep",
        "--v0-min",
        "2",
        "--v0-max",
        "6",
        "--points",
        "3",
        "--states",
        "1,0",
        "--methods",
        "all",
    ]);
    assert_eq!(code, 0);
    let order = |m: &str| {
        ["harmonic", "exponential", "numerov"]
            .iter()
            .position(|x| *x == m)
            .unwrap()
    };
    let keys: Vec<(usize, usize, f64)> = rows(&out)
        .iter()
        .map(|r| (r[1].parse().unwrap(), order(&r[2]), r[0].parse().unwrap()))
        .collect();
    assert_eq!(keys.len(), 18);
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("varwell-cli-{}.json", std::process::id()));
    let (code, out) = invoke(&[
        "critical",
        "--state",
        "1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 3);
}

#[test]
fn deep_and_series_reports() {
    let (code, out) = invoke(&["deep", "--family", "harm-odd"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("quantity,fitted,reference\n"));
    let (code, _) = invoke(&["deep", "--family", "exp-even"]);
    assert_eq!(code, 2);
    let (code, out) = invoke(&["series", "--family", "exp-even", "--order", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["diagnostics"]["pipeline"]["u_of_v0"].is_array());
}
