// simulate: config-driven runs of the hopping-fluid models.
// Links only the C API of libsoretsim.

#include <cstdio>
#include <cstring>

#include "soretsim/soretsim.h"

namespace {

void usage(FILE* out) {
    std::fprintf(out,
                 "usage: simulate <config-path> [--out DIR] [--mode MODE]\n"
                 "\n"
                 "  MODE overrides the config's run mode:\n"
                 "      discrete | continuum | oracle-check | experiment\n"
                 "  DIR overrides the config's output directory. Relative\n"
                 "  output directories are placed under $SORETSIM_OUT_ROOT\n"
                 "  when that variable is set.\n"
                 "\n"
                 "  Exit codes: 0 ok, 1 usage, 2 invalid config,\n"
                 "  3 conservation violated, 4 entropy decreased, 5 bounds\n"
                 "  violated, 6 invalid rates, 7 oracle mismatch,\n"
                 "  8 convergence/tolerance failure, 9 io error, 10 unstable\n"
                 "  step, 11 step too large, 12 invalid state, 13 state space\n"
                 "  too large, 14 singular quantity, 15 internal error.\n");
}

} // namespace

int main(int argc, char** argv) {
    const char* config_path = nullptr;
    const char* out_dir = nullptr;
    const char* mode = nullptr;

    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--help") == 0 || std::strcmp(argv[i], "-h") == 0) {
            usage(stdout);
            return 0;
        }
        if (std::strcmp(argv[i], "--out") == 0) {
            if (++i >= argc) {
                std::fprintf(stderr, "simulate: --out needs a directory\n");
                return 1;
            }
            out_dir = argv[i];
        } else if (std::strcmp(argv[i], "--mode") == 0) {
            if (++i >= argc) {
                std::fprintf(stderr, "simulate: --mode needs a value\n");
                return 1;
            }
            mode = argv[i];
        } else if (argv[i][0] == '-') {
            std::fprintf(stderr, "simulate: unknown option %s\n", argv[i]);
            usage(stderr);
            return 1;
        } else if (!config_path) {
            config_path = argv[i];
        } else {
            std::fprintf(stderr, "simulate: unexpected argument %s\n", argv[i]);
            return 1;
        }
    }
    if (!config_path) {
        usage(stderr);
        return 1;
    }

    const soretsim_status status = soretsim_run_file(config_path, out_dir, mode);
    if (status != SORETSIM_OK) {
        std::fprintf(stderr, "simulate: %s\n", soretsim_last_error());
        return soretsim_exit_code(status);
    }
    std::printf("simulate: ok\n");
    return 0;
}
