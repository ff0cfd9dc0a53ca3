//! Shows how the cache status classifies and how the requested files split
//! into the transmitted codewords.

use canoma::model::{classify_cache_case, split_files, CacheConfig, Signal};

fn main() {
    let configs = [
        ("reference placement", (0.2, 0.8, 0.8, 0.2)),
        ("no caching", (0.0, 0.0, 0.0, 0.0)),
        ("equal fractions (ties)", (0.5, 0.5, 0.5, 0.5)),
        ("requester of B holds more of it", (0.1, 0.3, 0.6, 0.9)),
        ("requester of A holds more of it", (0.7, 0.8, 0.3, 0.2)),
    ];
    for (label, fractions) in configs {
        let cache = CacheConfig::new(fractions, 4e9, 4e9, None).expect("valid fractions");
        let case = classify_cache_case(&cache);
        println!("{label}: (c_iA, c_iB, c_jA, c_jB) = {fractions:?} -> case {case:?}");
        match split_files(&cache) {
            Ok(load) => {
                for sig in Signal::ALL {
                    let role = match sig {
                        Signal::A1 | Signal::B1 => "cached at the other user, canceled there",
                        _ => "cached nowhere, received by both",
                    };
                    println!(
                        "    {}: {:>12.0} bits ({role})",
                        sig.label(),
                        load.beta(sig)
                    );
                }
            }
            Err(err) => println!("    delivery not supported: {err}"),
        }
        println!();
    }
}
