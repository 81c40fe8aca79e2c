#![no_main]

use libfuzzer_sys::fuzz_target;
use mild2::linking::{eliminate_generator, koch_presentation, linking_data, OrderedPrimeSet};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(set) = text.parse::<OrderedPrimeSet>() else { return };
    assert_eq!(set.to_string().parse::<OrderedPrimeSet>().unwrap(), set);
    if set.len() > 64 {
        return;
    }
    let link = linking_data(&set);
    assert_eq!(link.n(), set.len());
    let p = koch_presentation(&set);
    if let Ok(q) = eliminate_generator(&p, None) {
        assert_eq!(q.d + 1, p.d);
    }
});
