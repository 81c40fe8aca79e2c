#![no_main]

use libfuzzer_sys::fuzz_target;
use mild2::linking::Presentation;
use mild2::mildness::{check_mild, CheckOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = Presentation::from_json(text) else { return };
    let again = Presentation::from_json(&p.to_json()).expect("serialized presentation parses");
    assert_eq!(again.to_text(), p.to_text());
    assert_eq!(again.quadratic_relators(), p.quadratic_relators());
    if p.d <= 8 && p.relators.len() <= 8 {
        let _ = check_mild(&p, &CheckOptions::default());
    }
});
