use profinite::verify::{run, VerifyConfig};

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    let mut failed = Vec::new();
    for id in 1..=11 {
        let check = run(id, &cfg);
        println!("{check}");
        if !check.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
