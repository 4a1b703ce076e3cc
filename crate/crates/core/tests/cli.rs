use std::fs;
use std::process::Command;

use quintessa::cli::Output;
use quintessa::harness::load_table;
use quintessa::Error;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

fn quintessa(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quintessa"))
        .args(args)
        .env_remove("QUINTESSA_ORACLE_CACHE")
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_code_matrix() {
    let t1 = format!("{FIXTURES}/table1.csv");
    let t2 = format!("{FIXTURES}/table2.csv");
    let t3 = format!("{FIXTURES}/table3.csv");
    let cases: &[(&[&str], i32)] = &[
        (&["classify", "95", "--l", "2"], 0),
        (&["classify", "608"], 0),
        (&["classify", "149", "--suggest-l"], 0),
        (&["classify", "7"], 0),
        (&["split", "5", "--field", "k", "--n", "149"], 0),
        (&["split", "11", "--field", "k0"], 0),
        (&["symbol", "0,1,0,0", "19"], 0),
        (&["symbol", "-1,2,0,-3", "11"], 0),
        (&["kind", "57"], 0),
        (&["verify", &t2, &t3], 0),
        (&["--format", "json", "kind", "95"], 0),
        (&["--help"], 0),
        // invalid input
        (&[], 1),
        (&["frobnicate"], 1),
        (&["classify"], 1),
        (&["classify", "abc"], 1),
        (&["classify", "1"], 1),
        (&["classify", "32"], 1),
        (&["classify", "95", "--l", "19"], 1),
        (&["classify", "95", "--l", "4"], 1),
        (&["classify", "95", "--bogus"], 1),
        (&["split", "4", "--field", "k0"], 1),
        (&["split", "7", "--field", "gamma"], 1),
        (&["split", "7", "--field", "x", "--n", "95"], 1),
        (&["symbol", "1,2,3", "19"], 1),
        (&["symbol", "2", "5"], 1),
        (&["symbol", "19", "19"], 1),
        (&["kind", "243"], 1),
        (&["verify"], 1),
        (&["verify", "/nonexistent.csv"], 1),
        // Table 1 carries the composite row p = 299
        (&["verify", &t1], 2),
    ];
    for (args, want) in cases {
        let (code, out, err) = quintessa(args);
        assert_eq!(
            code, *want,
            "quintessa {args:?}\nstdout: {out}\nstderr: {err}"
        );
    }
}

#[test]
fn protocol_error_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let script = dir.path().join("bad.sh");
    fs::write(&script, "while read a b; do echo nonsense; done\n").unwrap();
    let oracle = format!("sh '{}'", script.display());
    let (code, _, _) = quintessa(&[
        "verify",
        &format!("{FIXTURES}/table3.csv"),
        "--oracle",
        &oracle,
    ]);
    assert_eq!(code, 3);
    let (code, out, _) = quintessa(&[
        "verify",
        &format!("{FIXTURES}/table3.csv"),
        "--oracle",
        "/nonexistent/gp",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("[SKIP] oracle CLASSGROUP5"));
}

#[test]
fn json_round_trips_and_matches_text() {
    let t3 = format!("{FIXTURES}/table3.csv");
    let invocations: &[&[&str]] = &[
        &["classify", "95", "--l", "2"],
        &["classify", "57", "--suggest-l"],
        &["classify", "149"],
        &["split", "19", "--field", "gamma", "--n", "95"],
        &["split", "29", "--field", "k", "--n", "57"],
        &["symbol", "0,1,0,0", "19"],
        &["kind", "95"],
        &["verify", &t3],
    ];
    for args in invocations {
        let mut json_args = vec!["--format", "json"];
        json_args.extend_from_slice(args);
        let (code, json, _) = quintessa(&json_args);
        assert_eq!(code, 0, "{args:?}");
        let parsed: Output = serde_json::from_str(&json).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(again.trim_end(), json.trim_end(), "{args:?}");
        let (_, text, _) = quintessa(args);
        assert_eq!(parsed.to_text(), text, "{args:?}");
    }
}

#[test]
fn symbol_of_zeta_at_19() {
    let (_, out, _) = quintessa(&["symbol", "0,1,0,0", "19"]);
    let first = out.lines().next().unwrap();
    assert!(first.starts_with("(3,0,4,4) over 19"), "{out}");
    assert!(first.ends_with("ζ^2"), "{out}");
}

#[test]
fn load_table_reports_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.csv");
    let header = "table,p,q,l,e,e_assumed,type,col_names,vec1,vec2,vec1_pow5,vec2_pow5\n";
    fs::write(
        &path,
        format!("{header}1,19,,2,1,true,\"(5,5)\",P;L,[4;0],[1;0],[0;0],[0;0]\n1,19,,2,1,true,\"(5,5)\",P;L,[4;x],[1;0],[0;0],[0;0]\n"),
    )
    .unwrap();
    match load_table(&path) {
        Err(Error::Fixture { line, message, .. }) => {
            assert_eq!(line, 3);
            assert!(message.contains('x'), "{message}");
        }
        other => panic!("{other:?}"),
    }
    fs::write(
        &path,
        format!("{header}7,19,,2,1,true,\"(5,5)\",P;L,[4;0],[1;0],[0;0],[0;0]\n"),
    )
    .unwrap();
    assert!(matches!(
        load_table(&path),
        Err(Error::Fixture { line: 2, .. })
    ));
    fs::write(&path, "p,q\n1,2\n").unwrap();
    assert!(matches!(
        load_table(&path),
        Err(Error::Fixture { line: 1, .. })
    ));
    fs::write(&path, "").unwrap();
    assert_eq!(load_table(&path).unwrap(), vec![]);
}

#[test]
fn shipped_fixtures_have_expected_sizes() {
    let sizes: Vec<usize> = (1..=3)
        .map(|t| {
            load_table(format!("{FIXTURES}/table{t}.csv"))
                .unwrap()
                .len()
        })
        .collect();
    assert_eq!(sizes, vec![15, 11, 20]);
    let t1 = load_table(format!("{FIXTURES}/table1.csv")).unwrap();
    assert_eq!((t1[0].p, t1[0].l), (19, Some(2)));
    let t3 = load_table(format!("{FIXTURES}/table3.csv")).unwrap();
    assert_eq!(t3[0].p, 149);
    assert_eq!(t3[0].ideal_columns, vec![vec![1, 0], vec![1, 0]]);
}
