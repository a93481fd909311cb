use ospfield_claims::{parse, ParseError};

#[test]
fn empty_operand_is_located() {
    let e = parse("algebra U = A1\nlet q = comm(x,)\n").unwrap_err();
    match e {
        ParseError::Syntax(s) => {
            assert_eq!(s.line, 2);
            assert_eq!(s.col, 16);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unknown_builtin() {
    let e = parse("algebra U = osp(1,3)\n").unwrap_err();
    assert!(
        matches!(e, ParseError::UnknownBuiltin { line: 1, .. }),
        "{e:?}"
    );
}

#[test]
fn use_before_define() {
    let e = parse("algebra U = S3\nassert_zero x*q\n").unwrap_err();
    match e {
        ParseError::UseBeforeDefine { line, name, .. } => {
            assert_eq!(line, 2);
            assert_eq!(name, "q");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn continuation_and_comments() {
    let s =
        parse("# header\nalgebra U = S3 # trailing\nassert_eq comm(x, y), \\\n    1\n").unwrap();
    assert_eq!(s.statements.len(), 2);
    assert_eq!(s.statements[1].line, 3);
}

#[test]
fn dangling_recipe() {
    assert!(parse("algebra U = S3\nassert_zero x via\n").is_err());
}

#[test]
fn unknown_statement() {
    assert!(matches!(
        parse("frobnicate x\n"),
        Err(ParseError::Syntax(_))
    ));
}
