//! Compiles and runs a small C program against the generated header and the
//! static library, proving the advertised ABI actually links and behaves.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tempograph.h"

#define CHECK(cond)                                                     \
    do {                                                                \
        if (!(cond)) {                                                  \
            fprintf(stderr, "FAILED at line %d: %s\n", __LINE__, #cond); \
            return 1;                                                   \
        }                                                               \
    } while (0)

int main(void) {
    CHECK(strlen(tg_version()) > 0);

    TgGraph *graph = NULL;
    CHECK(tg_graph_parse("tgraph 1\nn=3 a=4 nprime=4\n0 1 3\n1 2 4\n", &graph) == TG_STATUS_OK);
    CHECK(tg_graph_num_vertices(graph) == 3);

    TgDistance d;
    CHECK(tg_distance(graph, 0, 2, &d) == TG_STATUS_OK);
    CHECK(d.reachable && d.delta_prime == 4);
    CHECK(tg_distance(graph, 2, 0, &d) == TG_STATUS_OK);
    CHECK(!d.reachable && d.delta == 4.0);

    TgTimeEdge journey[2] = {{0, 1, 3}, {1, 2, 4}};
    CHECK(tg_journey_is_valid(graph, journey, 2));
    journey[1].label = 2;
    CHECK(!tg_journey_is_valid(graph, journey, 2));
    tg_graph_free(graph);

    CHECK(tg_graph_parse(NULL, &graph) == TG_STATUS_NULL_POINTER);
    CHECK(strlen(tg_last_error_message()) > 0);

    double phi = 0.0;
    CHECK(tg_phi(2, 3, &phi) == TG_STATUS_OK);
    CHECK(phi > 0.333 && phi < 0.334);

    TgStarMd star;
    CHECK(tg_star_md(10, 10.0, &star) == TG_STATUS_OK);
    CHECK(star.value > 7.479 && star.value < 7.481);

    TgBridges *bridges = NULL;
    CHECK(tg_bridges_solve(8, &bridges) == TG_STATUS_OK);
    CHECK(tg_bridges_max_cost(bridges) == 5);
    CHECK(tg_bridges_max_cost(bridges) == tg_bridges_oracle(8));
    tg_bridges_free(bridges);

    TgEstimate est;
    CHECK(tg_estimate_md(TG_FAMILY_STAR, 3, 2, 2.0, 200, 1, &est) == TG_STATUS_OK);
    CHECK(est.mean == 2.0 && est.has_argmax);

    printf("c smoke ok\n");
    return 0;
}
"#;

#[test]
fn c_program_compiles_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include_dir = manifest.join("include");
    assert!(
        include_dir.join("tempograph.h").exists(),
        "header not generated"
    );

    // target/<profile>/ is two levels up from the test executable in
    // target/<profile>/deps/.
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let static_lib = profile_dir.join("libtempograph_ffi.a");
    assert!(
        static_lib.exists(),
        "static library missing at {}",
        static_lib.display()
    );

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".to_string());
    let compile = Command::new(cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include_dir)
        .arg(&src)
        .arg(&static_lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .output()
        .expect("C compiler runs");
    assert!(
        compile.status.success(),
        "cc failed:\n{}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&bin).output().unwrap();
    assert!(
        run.status.success(),
        "smoke binary failed:\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&run.stdout),
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c smoke ok");
}
