#![no_main]

use libfuzzer_sys::fuzz_target;
use mild2::linking::QuadraticRelator;

fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let d = usize::from(first % 32) + 1;
    let Ok(r) = QuadraticRelator::parse(text, d) else { return };
    for owner in [None, Some(0), Some(d - 1)] {
        let rendered = r.render(owner);
        assert_eq!(QuadraticRelator::parse(&rendered, d).expect("rendered relator parses"), r);
    }
});
