use std::process::{Command, Output};

fn ziggurat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ziggurat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ziggurat(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(ziggurat(&["fringe", "abaab", "1/3"]).status.code(), Some(0));
    let bad_word = ziggurat(&["fringe", "xyz", "1/2"]);
    assert_eq!(bad_word.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_word.stderr).contains("illegal character 'x'"));
    let domain = ziggurat(&["sigma", "abaab", "--g", "2"]);
    assert_eq!(domain.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&domain.stderr).starts_with("error: NotADivisor"));
}

#[test]
fn table_marks_the_disagreeing_cells() {
    let text = stdout(&["table1"]);
    assert_eq!(text.matches("[published:").count(), 3);
    assert!(!text.contains("[stairstep:"));
    let row = text.lines().find(|l| l.starts_with("abbbaabaaabbbb ")).unwrap();
    assert!(row.contains("7/3 [published: 4/3]") && row.contains("4/3 [published: 7/3]"));
    let row = text.lines().find(|l| l.starts_with("abbbaabbaaabbbb ")).unwrap();
    assert!(row.contains("7/2 [published: 7/3]"));
    assert!(text.ends_with("25/28 cells match the printed values; 28/28 agree with the stairstep LP\n"));
}

#[test]
fn every_format_is_independent_of_thread_count() {
    for args in [
        &["ziggurat", "abaab", "--max-denom", "5", "--format", "pgm"][..],
        &["ziggurat", "abaab", "--max-denom", "5", "--format", "svg"],
        &[
            "fringe-plot",
            "abaab",
            "--max-q",
            "60",
            "--format",
            "svg",
            "--side",
            "right",
        ],
    ] {
        let one = stdout(&[&["--jobs", "1"], args].concat());
        let many = stdout(&[&["--jobs", "5"], args].concat());
        assert_eq!(one, many, "{args:?}");
        assert!(!one.contains('\r'));
    }
}

#[test]
fn file_output_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.csv");
    let path_str = path.to_str().unwrap();
    let args = ["ziggurat", "ab", "--max-denom", "3", "--format", "csv"];
    let printed = stdout(&args);
    assert!(stdout(&[&args[..], &["--output", path_str]].concat()).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
    assert!(printed.starts_with("r_num,r_den,s_num,s_den,R_num,R_den\n0,1,0,1,1,1\n"));
}
