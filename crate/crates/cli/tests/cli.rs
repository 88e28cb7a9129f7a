use std::io::Write;
use std::process::{Command, Output};

use eliminax::{parse_game, random_game, render_game, GameShape};
use tempfile::NamedTempFile;

const PD: &str = "game pd\nplayers 2\nstrategies 1 C D\nstrategies 2 C D\n\
    payoff C C : 2 2\npayoff C D : 0 3\npayoff D C : 3 0\npayoff D D : 1 1\n";

fn game_file(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn eliminax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eliminax")).args(args).env_remove("ELIMINAX_CAP").output().unwrap()
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

#[test]
fn eliminate_prisoners_dilemma() {
    let pd = game_file(PD);
    let out = eliminax(&["eliminate", "--op", "gsbar", "--game", pd.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "stage 0 : {C,D} | {C,D}\nstage 1 : {D} | {D}\nfixpoint at 1\n");
}

#[test]
fn compare_dominance_operators() {
    let pd = game_file(PD);
    let path = pd.path().to_str().unwrap();
    let out = eliminax(&["compare", "--ops", "gs,gsbar,ls,lsbar", "--game", path, "--expect-coincide"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("coincide through fixpoint\n"));
}

#[test]
fn expected_coincidence_that_fails_exits_1() {
    // c is undominated but a best response to no point belief
    let game = game_file(
        "game m\nplayers 2\nstrategies 1 a b c\nstrategies 2 x y\n\
         payoff a x : 3 0\npayoff a y : 0 0\npayoff b x : 0 0\npayoff b y : 3 0\n\
         payoff c x : 2 0\npayoff c y : 2 0\n",
    );
    let path = game.path().to_str().unwrap();
    let out = eliminax(&["compare", "--ops", "gs,gr", "--game", path, "--expect-coincide"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "diverge at stage 1\n  GS : {a,b,c} | {x,y}\n  GR[point] : {a,b} | {x,y}\n");
    assert_eq!(eliminax(&["compare", "--ops", "gs,gr", "--game", path]).status.code(), Some(0));
}

#[test]
fn example_replay_through_the_limit() {
    let out = eliminax(&["example", "--name", "nat_minus_one_GRbar", "--upto", "w+2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "stage 0 : N' | N'");
    assert!(lines.contains(&"stage w : {-1} | {-1}"));
    assert!(lines.contains(&"stage w+1 : {} | {}"));
    assert!(lines.contains(&"closure w+1"));
    assert!(lines.last().unwrap().starts_with("validated"));
}

#[test]
fn every_catalogued_example_validates() {
    let list = stdout(&eliminax(&["example", "--list"]));
    for name in list.lines().map(|l| l.split_whitespace().next().unwrap()) {
        let out = eliminax(&["example", "--name", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).lines().last().unwrap().starts_with("validated"), "{name}");
    }
}

#[test]
fn jsonl_stages_round_trip() {
    let text = render_game(&random_game(GameShape::default(), 17));
    let game = parse_game(&text).unwrap();
    let file = game_file(&text);
    let out = eliminax(&["eliminate", "--op", "lrbar", "--beliefs", "correlated", "--format", "jsonl", "--game", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<serde_json::Value> = stdout(&out).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let (verdict, stages) = lines.split_last().unwrap();
    assert!(verdict["verdict"].is_string());
    for line in stages {
        let rendered = line["restriction"].as_str().unwrap();
        let r = game.parse_restriction(rendered).unwrap();
        assert_eq!(game.render_restriction(&r), rendered);
    }
}

#[test]
fn trials_are_deterministic() {
    let text = render_game(&random_game(GameShape::default().with_players(3), 5));
    let file = game_file(&text);
    let path = file.path().to_str().unwrap();
    let args = ["order-independence", "--op", "gsbar", "--trials", "30", "--seed", "11", "--game", path];
    let first = eliminax(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, eliminax(&args).stdout);
    assert!(stdout(&first).contains("order independent"));
    let missing_seed = eliminax(&["order-independence", "--op", "gsbar", "--game", path]);
    assert_eq!(missing_seed.status.code(), Some(2));
}

#[test]
fn input_errors_exit_2_with_context() {
    let pd = game_file(PD);
    let path = pd.path().to_str().unwrap();
    let out = eliminax(&["eliminate", "--op", "gsbr", "--game", path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("did you mean `gsbar`?"));

    let broken = game_file("game x\nplayers 2\nstrategies 1 a\nstrategies 2 b\npayoff a b : 1\n");
    let out = eliminax(&["eliminate", "--op", "gs", "--game", broken.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"), "{}", String::from_utf8_lossy(&out.stderr));

    let out = eliminax(&["eliminate", "--op", "gs", "--game", path, "--cap", "w+"]);
    assert_eq!(out.status.code(), Some(2));
    let out = eliminax(&["eliminate", "--op", "grbar", "--beliefs", "corelated", "--game", path]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("`correlated`"));
}

#[test]
fn cap_from_the_environment() {
    let ladder = game_file(
        "game ladder\nplayers 2\nstrategies 1 a b c\nstrategies 2 x\n\
         payoff a x : 0 0\npayoff b x : 1 0\npayoff c x : 2 0\n",
    );
    let path = ladder.path().to_str().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_eliminax"))
        .args(["eliminate", "--op", "lsbar", "--game", path])
        .env("ELIMINAX_CAP", "0")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "stage 0 : {a,b,c} | {x}\ncap reached at 0\n");
}

#[test]
fn properties_along_a_trace() {
    let pd = game_file(PD);
    let out = eliminax(&["check", "--op", "gsbar", "--game", pd.path().to_str().unwrap(), "--properties", "b,d"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "property B holds for point beliefs\nproperty D holds along the GSbar trace\n");
}
