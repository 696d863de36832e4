//! Local elementary matrices against the transcribed golden tables.

mod common;

use common::golden::{check, tables};

#[test]
fn local_tables_match_transcription() {
    let ts = tables();
    assert_eq!(ts.len(), 24);
    let mut total = 0;
    let mut bad = vec![];
    for t in &ts {
        let (n, b) = check(t);
        total += n;
        bad.extend(b);
    }
    assert_eq!(total, 16 * 12 + 4 * 12);
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
