use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn dualsurf(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualsurf"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn dualsurf")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn read_dir_sorted(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn obj_parts(text: &str) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let mut verts = Vec::new();
    let mut faces = Vec::new();
    for line in text.lines() {
        let mut it = line.split_whitespace();
        match it.next() {
            Some("v") => {
                let v: Vec<f64> = it.map(|t| t.parse().unwrap()).collect();
                verts.push([v[0], v[1], v[2]]);
            }
            Some("f") => {
                let f: Vec<usize> = it.map(|t| t.parse().unwrap()).collect();
                faces.push([f[0], f[1], f[2]]);
            }
            _ => {}
        }
    }
    (verts, faces)
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let args = ["--curve", "latitude-drift", "--s-count", "12", "--u-count", "5"];
    let runs: Vec<_> = (0..2)
        .map(|_| {
            let dir = TempDir::new().unwrap();
            for cmd in ["analyze", "mesh", "smarandache"] {
                let mut full = vec![cmd];
                full.extend(args);
                assert_eq!(code(&dualsurf(&full, dir.path())), 0);
            }
            read_dir_sorted(dir.path())
        })
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn two_by_two_grid_gives_four_vertices_and_two_faces() {
    let dir = TempDir::new().unwrap();
    let o = dualsurf(&["mesh", "--kinds", "eg", "--s-count", "2", "--u-count", "2"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (v, f) = obj_parts(&fs::read_to_string(dir.path().join("eg.obj")).unwrap());
    assert_eq!(v.len(), 4);
    assert_eq!(f.len(), 2);
}

#[test]
fn helicoid_base_mesh_matches_closed_form() {
    let dir = TempDir::new().unwrap();
    let o = dualsurf(
        &["mesh", "--kinds", "et", "--s-min", "0", "--s-max", "6", "--s-count", "7", "--u-min", "-1", "--u-max", "1", "--u-count", "3"],
        dir.path(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let (v, _) = obj_parts(&fs::read_to_string(dir.path().join("base.obj")).unwrap());
    assert_eq!(v.len(), 21);
    for i in 0..7 {
        let s = i as f64;
        for j in 0..3 {
            let u = -1.0 + j as f64;
            let p = v[i * 3 + j];
            let want = [u * s.cos(), u * s.sin(), s];
            for k in 0..3 {
                assert!((p[k] - want[k]).abs() <= 1e-8, "vertex ({i},{j}): {p:?} vs {want:?}");
            }
        }
    }
}

#[test]
fn meshes_have_valid_nondegenerate_faces() {
    let dir = TempDir::new().unwrap();
    let o = dualsurf(&["mesh", "--curve", "cone", "--s-count", "10", "--u-count", "4", "--u-min", "0.2"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    for label in ["base", "et", "eg", "tg", "etg"] {
        let (v, f) = obj_parts(&fs::read_to_string(dir.path().join(format!("{label}.obj"))).unwrap());
        assert_eq!(f.len(), 2 * 9 * 3);
        for face in f {
            assert!(face.iter().all(|&i| i >= 1 && i <= v.len()), "{label}: index out of range");
            let [a, b, c] = face.map(|i| v[i - 1]);
            let ab = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
            let ac = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
            let n = [ab[1] * ac[2] - ab[2] * ac[1], ab[2] * ac[0] - ab[0] * ac[2], ab[0] * ac[1] - ab[1] * ac[0]];
            let area = 0.5 * (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
            assert!(area > 1e-12, "{label}: degenerate face {face:?}");
        }
    }
}

#[test]
fn derived_curve_export_reads_back_as_a_curve_file() {
    let dir = TempDir::new().unwrap();
    let o = dualsurf(&["smarandache", "--curve", "cone", "--kinds", "eg", "--s-count", "80"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let file = dir.path().join("eg_curve.txt");
    assert!(file.exists());
    let spec = format!("file:{}", file.display());
    let again = TempDir::new().unwrap();
    let o = dualsurf(&["analyze", "--curve", &spec, "--s-count", "8"], again.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(again.path().join("analysis.tsv")).unwrap().lines().count() > 1);
}

#[test]
fn off_sphere_curve_file_is_rejected() {
    let dir = TempDir::new().unwrap();
    let file = dir.path().join("bad.txt");
    let mut text = String::from("u ex ey ez esx esy esz\n");
    for k in 0..80 {
        let u = k as f64 * 0.05;
        text.push_str(&format!("{u} {} {} 0 0 0 0\n", 2.0 * u.cos(), 2.0 * u.sin()));
    }
    fs::write(&file, text).unwrap();
    let spec = format!("file:{}", file.display());
    let o = dualsurf(&["analyze", "--curve", &spec], dir.path());
    assert_eq!(code(&o), 1);
    assert!(!String::from_utf8_lossy(&o.stderr).contains("required"));
}

#[test]
fn bad_config_and_bad_flags_exit_one() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "curve = helicoid\nno_such_key = 3\n").unwrap();
    assert_eq!(code(&dualsurf(&["analyze", "--config", cfg.to_str().unwrap()], dir.path())), 1);
    assert_eq!(code(&dualsurf(&["analyze", "--s-count", "1"], dir.path())), 1);
    assert_eq!(code(&dualsurf(&["analyze", "--bogus"], dir.path())), 1);
}

#[test]
fn unwritable_output_exits_three() {
    let dir = TempDir::new().unwrap();
    let blocker = dir.path().join("occupied");
    fs::write(&blocker, "not a directory").unwrap();
    assert_eq!(code(&dualsurf(&["analyze"], &blocker)), 3);
    let missing = dir.path().join("missing.txt");
    let spec = format!("file:{}", missing.display());
    assert_eq!(code(&dualsurf(&["analyze", "--curve", &spec], dir.path())), 3);
}

#[test]
fn verify_status_tracks_the_ledger() {
    let dir = TempDir::new().unwrap();
    let o = dualsurf(&["verify", "--curve", "cone"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = dualsurf(&["verify", "--curve", "latitude-drift"], dir.path());
    assert_eq!(code(&o), 2);
    let ledger = fs::read_to_string(dir.path().join("ledger.tsv")).unwrap();
    assert!(ledger.starts_with("claim\tcurve\t"));
}
