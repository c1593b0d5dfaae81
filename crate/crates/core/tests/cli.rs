use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_freesub")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("freesub-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn fringe_of_the_running_example() {
    let text = ok(&["fringe", "--rank", "3", "--gens", "ab,acba"]);
    assert!(text.starts_with("6 subgroups\n"), "{text}");
    assert!(text.contains("ab, acba"));
    assert!(text.contains("a, b, c"));
}

#[test]
fn fringe_in_another_basis_collapses() {
    let text = ok(&["fringe", "--rank", "3", "--gens", "ab,acba", "--moves", "a/.L., A/..R, B/..R, a/..L"]);
    assert!(text.starts_with("1 subgroup\n"), "{text}");
}

#[test]
fn algebraic_extensions_of_a_conjugate_pair() {
    let text = ok(&["ae", "--rank", "2", "--gens", "a,baB"]);
    assert!(text.starts_with("2 subgroups\n"), "{text}");
    assert!(text.contains("  a, b\n") && text.contains("  a, baB\n"));
}

#[test]
fn pure_closure_of_a_square() {
    let json = ok(&["closure", "--prop", "pure", "--rank", "2", "--gens", "abab", "--json"]);
    assert_eq!(json.trim(), r#"{"rank":2,"base":0,"edges":[[0,"a",1],[1,"b",0]]}"#);
    let text = ok(&["closure", "--prop", "pure", "--iterative", "--rank", "2", "--gens", "abab"]);
    assert!(text.contains("generators: ab\n"), "{text}");
}

#[test]
fn predicates_use_exit_codes() {
    assert_eq!(run(&["member", "--rank", "3", "--gens", "ab,acba", "--word", "acba"]).status.code(), Some(0));
    assert_eq!(run(&["member", "--rank", "3", "--gens", "ab,acba", "--word", "ac"]).status.code(), Some(1));
    assert_eq!(run(&["leq", "--rank", "2", "--gens", "aa", "--other-gens", "a"]).status.code(), Some(0));
    assert_eq!(run(&["leq", "--rank", "2", "--gens", "a", "--other-gens", "aa"]).status.code(), Some(1));
    assert_eq!(run(&["is", "--prop", "pure", "--rank", "2", "--gens", "abab"]).status.code(), Some(1));
    assert_eq!(run(&["is", "--prop", "malnormal", "--rank", "2", "--gens", "a"]).status.code(), Some(0));
    assert_eq!(run(&["is", "--prop", "malnormal", "--rank", "2", "--gens", "a,bab"]).status.code(), Some(1));
    let ff = ["is", "--prop", "free-factor", "--rank", "2", "--gens", "ab", "--other-gens", "a,b"];
    assert_eq!(run(&ff).status.code(), Some(0));
    let not_ff = ["is", "--prop", "free-factor", "--rank", "2", "--gens", "aabb", "--other-gens", "a,b"];
    assert_eq!(run(&not_ff).status.code(), Some(1));
    let prim = ["is", "--prop", "primitive", "--rank", "2", "--gens", "a,b", "--word", "aab"];
    assert_eq!(run(&prim).status.code(), Some(0));
    let not_prim = ["is", "--prop", "primitive", "--rank", "2", "--gens", "a,b", "--word", "aabb"];
    assert_eq!(run(&not_prim).status.code(), Some(1));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["member", "--rank", "2", "--gens", "ac", "--word", "a"]).status.code(), Some(2));
    assert_eq!(run(&["fold", "--rank", "2", "--gens", "a1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["closure", "--prop", "p-pure:4", "--rank", "2", "--gens", "aa"]).status.code(), Some(2));
    let not_sub = ["takahasi", "--rank", "2", "--gens", "a", "--other-gens", "b"];
    let out = run(&not_sub);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn generator_files_and_graph_records() {
    let file = scratch("gens.txt", "# running example\nab\nacba  # second generator\n\n");
    let from_file = ok(&["fold", "--rank", "3", "--file", file.to_str().unwrap(), "--json"]);
    let from_gens = ok(&["fold", "--rank", "3", "--gens", "ab,acba", "--json"]);
    assert_eq!(from_file, from_gens);

    let graph = scratch("graph.json", &from_gens);
    let round = ok(&["fold", "--graph", graph.to_str().unwrap(), "--json"]);
    assert_eq!(round, from_gens);
    assert_eq!(ok(&["rank", "--graph", graph.to_str().unwrap()]).trim(), "2");

    let other = scratch("other.txt", "a\nb\nc\n");
    let code = run(&["leq", "--graph", graph.to_str().unwrap(), "--other-file", other.to_str().unwrap()]).status.code();
    assert_eq!(code, Some(0));
    for p in [file, graph, other] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn basis_express_and_index() {
    assert_eq!(ok(&["basis", "--rank", "3", "--gens", "acba,ab"]), "ab\nacba\n");
    assert_eq!(ok(&["express", "--rank", "3", "--gens", "ab,acba", "--word", "abacba"]).trim(), "ab");
    assert_eq!(ok(&["index", "--rank", "2", "--gens", "aa,ab,bb"]).trim(), "2");
    assert_eq!(ok(&["index", "--rank", "2", "--gens", "a"]).trim(), "infinite");
    assert_eq!(run(&["express", "--rank", "3", "--gens", "ab", "--word", "c"]).status.code(), Some(2));
}

#[test]
fn lattice_operations() {
    let meet = ok(&["intersect", "--rank", "2", "--gens", "a,b", "--other-gens", "aa,bb", "--json"]);
    let expected = ok(&["fold", "--rank", "2", "--gens", "aa,bb", "--json"]);
    assert_eq!(meet, expected);
    let joined = ok(&["join", "--rank", "2", "--gens", "aa", "--other-gens", "b", "--json"]);
    assert_eq!(joined, ok(&["fold", "--rank", "2", "--gens", "aa,b", "--json"]));
    let tak = ok(&["takahasi", "--rank", "3", "--gens", "ab,acba", "--other-gens", "a,b,c"]);
    assert!(tak.contains("generators: "), "{tak}");
}

#[test]
fn dot_export() {
    let dot = ok(&["dot", "--rank", "2", "--gens", "ab"]);
    assert!(dot.starts_with("digraph stallings {"));
    assert!(dot.contains("v0 [label=\"0\" shape=doublecircle];"));
    assert!(dot.contains("v0 -> v1 [label=\"a\"];") && dot.contains("v1 -> v0 [label=\"b\"];"));
}

#[test]
fn conjecture_explorer_with_an_adapted_basis() {
    let text = ok(&[
        "conjecture-explore",
        "--rank",
        "3",
        "--gens",
        "ab,acba",
        "--samples",
        "2",
        "--moves",
        "a/.L., A/..R, B/..R, a/..L",
    ]);
    assert!(text.contains("fringe intersection: 1 subgroup\n"), "{text}");
    assert!(text.contains("AE contained in intersection: true"));
    assert!(text.contains("intersection strictly larger: false"));

    let none = ok(&["conjecture-explore", "--rank", "3", "--gens", "ab,acba", "--samples", "0"]);
    assert!(none.contains("fringe intersection: 6 subgroups\n"), "{none}");
}

#[test]
fn output_is_deterministic() {
    let commands: [&[&str]; 4] = [
        &["fringe", "--rank", "3", "--gens", "ab,acba", "--json"],
        &["ae", "--rank", "3", "--gens", "ab,acba"],
        &["conjecture-explore", "--rank", "2", "--gens", "aab,bba", "--samples", "3", "--seed", "11"],
        &["closure", "--prop", "malnormal", "--rank", "2", "--gens", "aa,bAb"],
    ];
    for args in commands {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
}
