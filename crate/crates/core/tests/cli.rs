mod common;

use std::path::Path;
use std::process::Command as Process;

use pseudosym::classify::Decomposition;
use pseudosym::cli::{run, Command, OutputFormat};
use pseudosym::format::write_polytope;

fn exec(cmd: &Command) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(cmd, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn binary(args: &[&str]) -> (i32, String, String) {
    let o = Process::new(env!("CARGO_BIN_EXE_pseudosym"))
        .args(args)
        .output()
        .unwrap();
    (
        o.status.code().unwrap(),
        String::from_utf8(o.stdout).unwrap(),
        String::from_utf8(o.stderr).unwrap(),
    )
}

fn inspect_json(path: &Path) -> serde_json::Value {
    let (code, out, _) = exec(&Command::Inspect {
        path: path.into(),
        format: OutputFormat::Json,
    });
    assert_eq!(code, 0);
    serde_json::from_str(&out).unwrap()
}

#[test]
fn verify_dim_three() {
    let (code, out, err) = binary(&["verify", "--dim", "3"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.lines().any(|l| l == "5/5 classes verified"), "{out}");
    assert_eq!(out.matches("PASS").count(), 5);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["classify", "--dim", "9"][..],
        &["classify", "--dim", "0"],
        &["classify"],
        &["verify"],
        &["verify", "--dim", "2", "--path", "x"],
        &["frobnicate"],
        &["classify", "--dim", "2", "--format", "yaml"],
    ] {
        let (code, _, err) = binary(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
    let (code, _, err) = exec(&Command::WirthList {
        dim: 12,
        one_minimal: false,
    });
    assert_eq!(code, 2);
    assert!(err.starts_with("usage error"));
}

#[test]
fn domain_errors_exit_one_with_one_line() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.txt");
    std::fs::write(&dup, "2 4\n1 0\n1 0\n0 1\n-1 -1\n").unwrap();
    let missing = dir.path().join("missing.txt");
    let cube = dir.path().join("cube.txt");
    std::fs::write(
        &cube,
        write_polytope(&pseudosym::catalog::cube(3).unwrap(), None),
    )
    .unwrap();
    for args in [
        vec!["inspect".to_string(), dup.display().to_string()],
        vec!["inspect".to_string(), missing.display().to_string()],
        vec!["embed".to_string(), dup.display().to_string()],
        vec![
            "verify".to_string(),
            "--path".to_string(),
            cube.display().to_string(),
        ],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, out, err) = binary(&args);
        assert_eq!(code, 1, "{args:?}");
        assert!(out.is_empty());
        assert_eq!(err.lines().count(), 1, "{err}");
        assert!(err.starts_with("error: "));
    }
}

#[test]
fn seven_vertex_polytope_is_reported_without_decomposition() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seven.txt");
    std::fs::write(
        &path,
        write_polytope(&common::seven_vertex_polytope(), Some("seven vertices")),
    )
    .unwrap();
    let (code, out, _) = exec(&Command::Inspect {
        path: path.clone(),
        format: OutputFormat::Text,
    });
    assert_eq!(code, 0);
    assert!(out.contains("facets: 14\n"));
    assert!(out.contains("pseudo-symmetric: no\n"));
    assert!(out.contains("decomposition: none"));
    let json = inspect_json(&path);
    assert_eq!(json["facets"], 14);
    assert!(json["decomposition"].is_null());
}

#[test]
fn classify_is_deterministic() {
    for format in [OutputFormat::Text, OutputFormat::Json] {
        let cmd = Command::Classify {
            dim: 5,
            emit_vertices: None,
            format,
        };
        let a = exec(&cmd);
        let b = exec(&cmd);
        assert_eq!(a.0, 0);
        assert_eq!(a, b);
    }
    let (_, text, _) = exec(&Command::Classify {
        dim: 4,
        emit_vertices: None,
        format: OutputFormat::Text,
    });
    assert_eq!(text.lines().next(), Some("# dimension 4: 15 classes"));
    assert_eq!(text.lines().count(), 16);
}

#[test]
fn classify_json_shape() {
    let (code, out, _) = exec(&Command::Classify {
        dim: 4,
        emit_vertices: None,
        format: OutputFormat::Json,
    });
    assert_eq!(code, 0);
    let value: serde_json::Value = serde_json::from_str(&out).unwrap();
    let arr = value.as_array().unwrap();
    assert_eq!(arr.len(), 15);
    for entry in arr {
        let keys: Vec<&str> = entry
            .as_object()
            .unwrap()
            .keys()
            .map(String::as_str)
            .collect();
        assert_eq!(keys.len(), 5);
        for k in ["dim", "core", "segments", "del_pezzo", "pseudo_del_pezzo"] {
            assert!(keys.contains(&k), "missing {k}");
        }
        if let Some(core) = entry["core"].as_object() {
            assert!(core.contains_key("dim") && core.contains_key("f") && core.contains_key("c"));
        }
    }
    let decs: Vec<Decomposition> = serde_json::from_str(&out).unwrap();
    assert_eq!(decs, pseudosym::classify::classify(4).unwrap());
}

#[test]
fn emitted_files_round_trip_through_inspect() {
    let dir = tempfile::tempdir().unwrap();
    let emit = dir.path().join("out");
    let cmd = Command::Classify {
        dim: 4,
        emit_vertices: Some(emit.clone()),
        format: OutputFormat::Json,
    };
    let (code, out, _) = exec(&cmd);
    assert_eq!(code, 0);
    let decs: Vec<Decomposition> = serde_json::from_str(&out).unwrap();

    let mut files: Vec<_> = std::fs::read_dir(&emit)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert_eq!(files.len(), decs.len());
    for (i, (file, dec)) in files.iter().zip(&decs).enumerate() {
        let name = file.file_name().unwrap().to_str().unwrap();
        assert!(name.starts_with(&format!("{:03}-", i + 1)), "{name}");
        assert_eq!(name.len(), 4 + 16 + 4);
        let json = inspect_json(file);
        let back: Decomposition = serde_json::from_value(json["decomposition"].clone()).unwrap();
        assert_eq!(&back, dec, "{name}");
    }

    let first: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    exec(&cmd);
    let again: Vec<Vec<u8>> = files.iter().map(|f| std::fs::read(f).unwrap()).collect();
    assert_eq!(first, again);
}

#[test]
fn embed_output_is_a_polytope_file_inside_the_cube() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("d3.txt");
    std::fs::write(
        &src,
        write_polytope(&pseudosym::catalog::d_polytope(3).unwrap(), None),
    )
    .unwrap();
    let (code, out, _) = exec(&Command::Embed { path: src.clone() });
    assert_eq!(code, 0);
    assert!(out.starts_with("# u = "));
    let image = pseudosym::format::parse_polytope(&out).unwrap();
    assert!(image.vertices().iter().flatten().all(|x| x.abs() <= 1));
    let original = pseudosym::format::read_polytope_file(&src).unwrap();
    assert!(pseudosym::classify::is_isomorphic(&original, &image).unwrap());
}

#[test]
fn wirth_list_counts() {
    for (d, minimal, all) in [
        (2, 1, 2),
        (4, 3, 1 + 1 + 1 + 3),
        (6, 9, 1 + 1 + 1 + 3 + 3 + 9),
    ] {
        let (_, out, _) = exec(&Command::WirthList {
            dim: d,
            one_minimal: true,
        });
        assert_eq!(out.lines().count(), minimal + 1, "{out}");
        let (_, out, _) = exec(&Command::WirthList {
            dim: d,
            one_minimal: false,
        });
        assert_eq!(out.lines().count(), all + 1, "{out}");
    }
}

#[test]
fn verify_path_reports_one_class() {
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("v4.txt");
    std::fs::write(
        &src,
        write_polytope(&pseudosym::catalog::del_pezzo(4).unwrap(), None),
    )
    .unwrap();
    let (code, out, _) = exec(&Command::Verify {
        dim: None,
        path: Some(src),
    });
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("1/1 classes verified\n"));
}
