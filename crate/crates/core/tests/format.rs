use parity_si::family::generate;
use parity_si::format::{parse, serialize};
use parity_si::random::random_game;
use parity_si::{restrict, validate, GameGraph, Node, NodeId, ParityGame, ParseErrorKind, Player};
use proptest::prelude::*;

fn arbitrary_game() -> impl Strategy<Value = ParityGame> {
    (1..=12usize).prop_flat_map(|n| {
        prop::collection::vec(
            (
                any::<bool>(),
                0..1000u32,
                prop::collection::vec(0..n, 0..=4),
                prop::option::of("[a-z_0-9 ;,]{0,8}"),
            ),
            n,
        )
        .prop_map(|rows| {
            let nodes = rows
                .into_iter()
                .map(|(even, p, succ, label)| {
                    let owner = if even { Player::Even } else { Player::Odd };
                    let node = Node::new(owner, p, succ.into_iter().map(NodeId).collect());
                    match label {
                        Some(l) => node.with_label(l),
                        None => node,
                    }
                })
                .collect();
            ParityGame::new(nodes).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn parse_inverts_serialize(game in arbitrary_game()) {
        let text = serialize(&game);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &game);
        prop_assert_eq!(serialize(&back), text);
    }

    #[test]
    fn random_games_round_trip_and_are_clean(n in 2..40usize, seed in any::<u64>(), d in 1..4usize) {
        let game = random_game(n, 1..=d.min(n - 1), seed).unwrap();
        prop_assert!(validate(&game).is_clean());
        prop_assert_eq!(parse(&serialize(&game)).unwrap(), game);
    }

    #[test]
    fn restriction_of_a_total_game_is_total(n in 2..30usize, seed in any::<u64>(), pick in any::<u64>()) {
        let game = random_game(n, 1..=(n - 1).min(3), seed).unwrap();
        let sigma = parity_si::Strategy::from_fn(&game, Player::Even, |v| {
            let s = game.successors(v);
            s[(pick as usize).wrapping_add(v.index()) % s.len()]
        });
        prop_assert!(validate(&restrict(&game, &sigma).unwrap()).is_total);
    }

    #[test]
    fn parser_never_panics(text in "\\PC{0,200}") {
        let _ = parse(&text);
    }
}

#[test]
fn lower_bound_games_round_trip() {
    for n in 1..=5 {
        let game = generate(n).unwrap().into_game();
        let text = serialize(&game);
        assert!(text.starts_with(&format!("parity {};\n", game.node_count() - 1)));
        assert_eq!(parse(&text).unwrap(), game);
    }
    let text = serialize(generate(1).unwrap().game());
    assert_eq!(text.lines().count(), 26);
    assert!(text.contains("\n0 2 0 24,21 \"s\";\n"));
}

#[test]
fn oversized_priority_is_rejected() {
    let err = parse("0 4294967296 0 0;").unwrap_err();
    assert_eq!(err.kind, ParseErrorKind::Overflow);
    assert_eq!(err.line, 1);
}
