#![no_main]

use libfuzzer_sys::fuzz_target;
use parity_si::format::parse;
use parity_si::validate;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(game) = parse(text) {
            // Whatever parses must be safe to validate.
            let _ = validate(&game);
        }
    }
});
