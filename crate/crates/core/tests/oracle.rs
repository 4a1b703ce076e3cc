use std::fs;
use std::time::Duration;

use quintessa::harness::oracle::{
    OracleAnswer, OracleClient, OracleOutcome, OracleRequest, ResponseCache,
};
use quintessa::harness::{self, verify_row, Status};
use quintessa::Error;

/// A shell oracle that logs each request to `log` and answers from a fixed script.
fn fake_oracle(dir: &std::path::Path, body: &str) -> String {
    let script = dir.join("oracle.sh");
    let log = dir.join("requests.log");
    fs::write(
        &script,
        format!(
            "while read kind n; do\n  echo \"$kind $n\" >> '{}'\n{body}\ndone\n",
            log.display()
        ),
    )
    .unwrap();
    format!("sh '{}'", script.display())
}

const TYPE_55: &str = r#"  case $kind in
    CLASSGROUP5) echo "OK 5 5" ;;
    HGAMMA) echo "OK 10" ;;
    UINDEX) echo "OK 125" ;;
    *) echo "ERR unknown request" ;;
  esac"#;

fn logged(dir: &std::path::Path) -> Vec<String> {
    fs::read_to_string(dir.join("requests.log"))
        .unwrap_or_default()
        .lines()
        .map(str::to_string)
        .collect()
}

#[test]
fn round_trip_and_cache_hits() {
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("cache.tsv");
    let cmd = fake_oracle(dir.path(), TYPE_55);

    let mut client = OracleClient::new(cmd.clone(), ResponseCache::open(&cache_path).unwrap());
    let req = OracleRequest::class_group5(95);
    assert_eq!(
        client.query(&req).unwrap(),
        OracleOutcome::Answer(OracleAnswer::ClassGroup {
            divisors: vec![5, 5]
        })
    );
    assert_eq!(
        client.query(&OracleRequest::h_gamma(95)).unwrap(),
        OracleOutcome::Answer(OracleAnswer::Integer { value: 10 })
    );
    // second query for the same request is served from the cache
    client.query(&req).unwrap();
    assert_eq!(client.requests_sent(), 2);
    drop(client);
    assert_eq!(logged(dir.path()), vec!["CLASSGROUP5 95", "HGAMMA 95"]);

    // a fresh client over the same cache file never starts the oracle
    let mut again = OracleClient::new("exit 1", ResponseCache::open(&cache_path).unwrap());
    assert_eq!(
        again.query(&req).unwrap(),
        OracleOutcome::Answer(OracleAnswer::ClassGroup {
            divisors: vec![5, 5]
        })
    );
    assert_eq!(again.requests_sent(), 0);
    let text = fs::read_to_string(&cache_path).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains(&format!("{}\tOK 5 5", req.cache_key())));
}

#[test]
fn missing_or_silent_oracle_is_unavailable() {
    let mut client = OracleClient::new("/nonexistent/oracle-binary", ResponseCache::in_memory());
    assert!(matches!(
        client.query(&OracleRequest::class_group5(95)).unwrap(),
        OracleOutcome::Unavailable(_)
    ));
    let mut slow = OracleClient::new("sleep 30", ResponseCache::in_memory())
        .with_timeout(Duration::from_millis(200));
    assert!(matches!(
        slow.query(&OracleRequest::u_index(95)).unwrap(),
        OracleOutcome::Unavailable(_)
    ));
}

#[test]
fn malformed_reply_is_a_protocol_error_with_payload() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_oracle(dir.path(), "  echo 'garbage out'");
    let mut client = OracleClient::new(cmd, ResponseCache::in_memory());
    match client.query(&OracleRequest::class_group5(2)) {
        Err(Error::OracleProtocol { raw, .. }) => assert_eq!(raw, "garbage out"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn err_replies_are_not_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_oracle(dir.path(), "  echo 'ERR busy'");
    let mut client = OracleClient::new(cmd, ResponseCache::in_memory());
    let req = OracleRequest::class_group5(2);
    assert!(matches!(
        client.query(&req).unwrap(),
        OracleOutcome::Answer(OracleAnswer::Refused { .. })
    ));
    client.query(&req).unwrap();
    assert_eq!(client.requests_sent(), 2);
    assert!(client.cache().is_empty());
}

#[test]
fn oracle_checks_in_row_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cmd = fake_oracle(dir.path(), TYPE_55);
    let rows =
        harness::load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/table1.csv")).unwrap();
    let mut client = OracleClient::new(cmd, ResponseCache::in_memory());
    let r = verify_row(&rows[0], Some(&mut client));
    assert_eq!(r.check("oracle CLASSGROUP5").unwrap().status, Status::Pass);
    assert_eq!(r.check("oracle structure").unwrap().status, Status::Pass);

    let wrong = fake_oracle(dir.path(), "  echo 'OK 25'");
    let mut client = OracleClient::new(wrong, ResponseCache::in_memory());
    let r = verify_row(&rows[0], Some(&mut client));
    assert_eq!(r.check("oracle CLASSGROUP5").unwrap().status, Status::Fail);
    assert_eq!(r.check("oracle structure").unwrap().status, Status::Fail);
    assert!(r.oracle_protocol_error.is_none());

    let broken = fake_oracle(dir.path(), "  echo 'OK five'");
    let mut client = OracleClient::new(broken, ResponseCache::in_memory());
    let r = verify_row(&rows[0], Some(&mut client));
    assert!(r.oracle_protocol_error.is_some());
    assert_eq!(r.status(), Status::Fail);
}

#[test]
fn absent_oracle_skips_rows() {
    let rows =
        harness::load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/table3.csv")).unwrap();
    let mut client = OracleClient::new("/nonexistent/oracle-binary", ResponseCache::in_memory());
    let r = verify_row(&rows[0], Some(&mut client));
    assert!(r.checks_named("oracle").all(|c| c.status == Status::Skip));
    assert!(r.oracle_protocol_error.is_none());
    assert_ne!(r.status(), Status::Fail);
}
