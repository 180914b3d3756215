//! Generates include/apnforge.h from the extern "C" surface.  If cbindgen
//! cannot run, a pre-rendered copy of the same header is written instead so
//! downstream builds never break.

use std::path::Path;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets this");
    let header = Path::new(&crate_dir).join("include").join("apnforge.h");
    std::fs::create_dir_all(header.parent().unwrap()).expect("create include/");

    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(e) => {
            println!("cargo:warning=cbindgen failed ({e}); writing the fallback header");
            std::fs::write(&header, FALLBACK_HEADER).expect("write fallback header");
        }
    }
}

const FALLBACK_HEADER: &str = r#"/* Fallback copy of the apnforge-ffi header; see build.rs. */
#ifndef APNFORGE_H
#define APNFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

/* Result of every fallible call. */
typedef enum ApnForgeStatus {
  ApnForgeStatus_Ok = 0,
  ApnForgeStatus_NullArgument = 1,
  ApnForgeStatus_InvalidUtf8 = 2,
  ApnForgeStatus_InvalidInput = 3,
  ApnForgeStatus_CapExceeded = 4,
  ApnForgeStatus_BudgetExhausted = 5,
  ApnForgeStatus_PanicCaught = 6,
  ApnForgeStatus_InternalError = 7,
} ApnForgeStatus;

/* Opaque handle to a quadratic binomial in normal form. */
typedef struct ApnForgeBinomial ApnForgeBinomial;

/* Opaque handle to a binary field GF(2^m). */
typedef struct ApnForgeField ApnForgeField;

#ifdef __cplusplus
extern "C" {
#endif

ApnForgeStatus apnforge_field_new(uint32_t m, ApnForgeField **out);

ApnForgeStatus apnforge_field_new_with_modulus(uint32_t m,
                                               const char *modulus_hex,
                                               ApnForgeField **out);

uint32_t apnforge_field_degree(const ApnForgeField *field);

void apnforge_field_free(ApnForgeField *field);

ApnForgeStatus apnforge_binomial_new(const ApnForgeField *field,
                                     uint32_t i,
                                     uint32_t s,
                                     uint32_t t,
                                     const char *delta,
                                     ApnForgeBinomial **out);

ApnForgeStatus apnforge_binomial_normalize(const ApnForgeField *field,
                                           const char *c1,
                                           uint64_t e1,
                                           const char *c2,
                                           uint64_t e2,
                                           ApnForgeBinomial **out);

void apnforge_binomial_free(ApnForgeBinomial *binomial);

ApnForgeStatus apnforge_classify_json(const ApnForgeBinomial *binomial,
                                      uint64_t max_beta_trials,
                                      uint64_t max_spec_degree,
                                      char **out_json);

ApnForgeStatus apnforge_differential_uniformity(const ApnForgeBinomial *binomial,
                                                uint64_t *out_du);

ApnForgeStatus apnforge_count_points(const ApnForgeBinomial *binomial,
                                     uint32_t extension_degree,
                                     uint64_t *out_count);

void apnforge_string_free(char *text);

const char *apnforge_last_error(void);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* APNFORGE_H */
"#;
