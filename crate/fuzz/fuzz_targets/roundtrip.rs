#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_si::format::{parse, serialize};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(game) = parse(text) else { return };
    let written = serialize(&game);
    let reparsed = parse(&written).expect("serialized game must parse");
    assert_eq!(reparsed, game);
    assert_eq!(serialize(&reparsed), written);
});
