use std::process::{Command, Output};

fn wdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wdist"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wdist(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

const SAMPLE: &str = "t^2 a^3 t a^-2 t a t^-7 a^2 t";

#[test]
fn length_of_the_example_word() {
    assert_eq!(stdout(&["zz", "len", SAMPLE]), "20\n");
    assert_eq!(
        stdout(&["zz", "len", SAMPLE, "--format", "json"]),
        "{\"length\":20}\n"
    );
}

#[test]
fn geodesic_round_trips_through_len() {
    let g = stdout(&["zz", "geodesic", "a t a T a^-2 t^3"]);
    let direct = stdout(&["zz", "len", "a t a T a^-2 t^3"]);
    assert_eq!(stdout(&["zz", "len", g.trim()]), direct);
}

#[test]
fn baumslag_table() {
    let csv = stdout(&["bg", "table", "--max-n", "3"]);
    assert_eq!(
        csv,
        "n,len_G_witness,len_H,ratio\n0,1,1,1\n1,3,4,4/3\n2,5,8,8/5\n3,7,14,2\n"
    );
}

#[test]
fn json_matches_csv() {
    let csv = stdout(&["bg", "table", "--max-n", "4"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&[
        "bg", "table", "--max-n", "4", "--format", "json",
    ]))
    .unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    let arr = json.as_array().unwrap();
    assert_eq!(rows.len(), arr.len());
    for (line, obj) in rows.iter().zip(arr) {
        let fields: Vec<String> = ["n", "len_G_witness", "len_H", "ratio"]
            .iter()
            .map(|k| match &obj[*k] {
                serde_json::Value::String(s) => s.clone(),
                v => v.to_string(),
            })
            .collect();
        assert_eq!(*line, fields.join(","));
    }
}

#[test]
fn verify_reports_element_count() {
    let out = stdout(&["oracle", "verify", "zz", "--radius", "8"]);
    let n: usize = out
        .strip_prefix("OK: formula = BFS on ")
        .and_then(|s| s.strip_suffix(" elements\n"))
        .expect("verdict line")
        .parse()
        .unwrap();
    assert!(n > 1000);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = stdout(&["oracle", "ball", "f", "--radius", "5", "--threads", "1"]);
    let many = stdout(&["oracle", "ball", "f", "--radius", "5", "--threads", "4"]);
    assert_eq!(one, many);
}

#[test]
fn f_commands() {
    assert_eq!(stdout(&["f", "weight", "x1 x2 x1^-2"]), "6\n");
    assert_eq!(stdout(&["f", "len", "x1 x2 x1^-2", "--radius", "8"]), "6\n");
    let nf = stdout(&["f", "nf", "x0^-1 x1 x0"]);
    assert!(nf.lines().nth(1).unwrap().starts_with("x2,"));
    let phi = stdout(&["embed", "phi", "a"]);
    assert!(phi.contains("x1 x2 x1^-2"));
}

#[test]
fn error_exit_codes() {
    let bad_word = wdist(&["zz", "len", "a^x"]);
    assert_eq!(bad_word.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_word.stderr).contains("parse error"));
    let bad_usage = wdist(&["zz", "frobnicate"]);
    assert_eq!(bad_usage.status.code(), Some(2));
    let unsupported = wdist(&["f", "weight", "x0"]);
    assert_eq!(unsupported.status.code(), Some(1));
    let negative = wdist(&["bg", "conj-s", "a", "--k", "-1"]);
    assert_eq!(negative.status.code(), Some(1));
}
