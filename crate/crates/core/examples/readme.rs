use std::sync::Arc;

use eliminax::{engine::iterate, make_operator, parse_game, OperatorName, Ordinal};

fn main() -> eliminax::Result<()> {
    let text = "game pd\nplayers 2\nstrategies 1 C D\nstrategies 2 C D\n\
        payoff C C : 2 2\npayoff C D : 0 3\npayoff D C : 3 0\npayoff D D : 1 1\n";
    let game = Arc::new(parse_game(text)?);
    let op = make_operator(OperatorName::GSbar, game.clone(), None)?;
    let trace = iterate(&op, Ordinal::omega_times(2))?;
    println!("{}", trace.verdict);
    Ok(())
}
