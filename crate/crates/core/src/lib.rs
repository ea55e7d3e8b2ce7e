pub mod combinat;
pub mod constructor;
pub mod error;
pub mod genfun;
pub mod models;
pub mod rational;
pub mod series;
pub mod transforms;
pub mod verify;
pub mod words;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/series.md")]
    struct Series;
    #[doc = include_str!("../../../book/src/words.md")]
    struct Words;
    #[doc = include_str!("../../../book/src/models.md")]
    struct Models;
    #[doc = include_str!("../../../book/src/combinat.md")]
    struct Combinat;
    #[doc = include_str!("../../../book/src/constructor.md")]
    struct Constructor;
    #[doc = include_str!("../../../book/src/genfun.md")]
    struct Genfun;
    #[doc = include_str!("../../../book/src/transforms.md")]
    struct Transforms;
    #[doc = include_str!("../../../book/src/verification.md")]
    struct Verification;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
