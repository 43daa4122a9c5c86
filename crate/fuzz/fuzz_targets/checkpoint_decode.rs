#![no_main]

use libfuzzer_sys::fuzz_target;
use ryser_core::search::checkpoint::Checkpoint;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = Checkpoint::decode(text) {
        assert_eq!(Checkpoint::decode(&c.encode()).expect("encoded state decodes"), c);
    }
});
