use pzf::harness::{run_sweep, write_csv, Scheme, SimulationConfig, CSV_HEADER};

fn config() -> SimulationConfig {
    SimulationConfig {
        antennas: 32,
        users: 4,
        snr_grid_db: vec![-10.0, -5.0, 0.0, 5.0, 10.0],
        trials: 100,
        seed: 42,
        schemes: vec![Scheme::Fczf, Scheme::Pzf, Scheme::PzfQuantized { bits: 3 }],
        emit_closed_form: true,
        ..SimulationConfig::default()
    }
}

#[test]
fn csv_parses_back_to_ten_significant_digits() {
    let result = run_sweep(&config()).unwrap();
    let mut out = Vec::new();
    write_csv(&result, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(CSV_HEADER));

    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 7, "{line}");
        let scheme: Scheme = fields[0].parse().unwrap();
        let snr: f64 = fields[1].parse().unwrap();
        let cell = result.cell(scheme, snr).unwrap();
        assert_eq!(fields[2].parse::<usize>().unwrap(), cell.trials);
        let mean: f64 = fields[3].parse().unwrap();
        let stderr: f64 = fields[4].parse().unwrap();
        assert!((mean - cell.se_mean).abs() <= 5e-10 * cell.se_mean.abs());
        assert!((stderr - cell.se_stderr).abs() <= 5e-10 * cell.se_stderr.abs());
        let cf = result.closed_form_at(snr).unwrap();
        let bound: f64 = fields[5].parse().unwrap();
        let asym: f64 = fields[6].parse().unwrap();
        assert!((bound - cf.pzf_bound).abs() <= 5e-10 * cf.pzf_bound);
        assert!((asym - cf.fczf_asymptotic).abs() <= 5e-10 * cf.fczf_asymptotic);
        rows += 1;
    }
    assert_eq!(rows, 15);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let render = || {
        let mut out = Vec::new();
        write_csv(&run_sweep(&config()).unwrap(), &mut out).unwrap();
        out
    };
    assert_eq!(render(), render());
}

#[test]
fn closed_form_columns_empty_when_disabled() {
    let cfg = SimulationConfig {
        emit_closed_form: false,
        trials: 5,
        ..config()
    };
    let mut out = Vec::new();
    write_csv(&run_sweep(&cfg).unwrap(), &mut out).unwrap();
    for line in String::from_utf8(out).unwrap().lines().skip(1) {
        assert!(line.ends_with(",,"), "{line}");
    }
}
