#include <cstdio>
#include <cstring>

#include "bilap.h"

namespace {

const char* kUsage =
    "usage: bilap <command> --config <path> [--out <dir>]\n"
    "\n"
    "commands:\n"
    "  solve         one eigenpair at fixed p\n"
    "  continuation  p-sweep with warm starts and 1/p extrapolation\n"
    "  faber-krahn   multi-domain sweep against the equal-measure ball\n"
    "  oracle        closed-form ball values and radial profiles\n"
    "  convergence   fixed-p eigenvalue across grid resolutions\n"
    "  plot          SVG from a field dump or result table\n"
    "\n"
    "exit codes: 0 ok, 2 config error, 3 solver failure, 4 I/O failure\n";

bool known_command(const char* c) {
    static const char* names[] = {"solve",  "continuation", "faber-krahn",
                                  "oracle", "convergence",  "plot"};
    for (const char* n : names)
        if (std::strcmp(c, n) == 0) return true;
    return false;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
        std::fputs(kUsage, argc < 2 ? stderr : stdout);
        return argc < 2 ? 2 : 0;
    }
    if (std::strcmp(argv[1], "--version") == 0) {
        std::printf("bilap %s\n", bilap_version());
        return 0;
    }
    const char* command = argv[1];
    if (!known_command(command)) {
        std::fprintf(stderr, "error: unknown command '%s'\n\n%s", command, kUsage);
        return 2;
    }
    const char* config_path = nullptr;
    const char* out_dir = nullptr;
    for (int i = 2; i < argc; ++i) {
        if (std::strcmp(argv[i], "--config") == 0 && i + 1 < argc) {
            config_path = argv[++i];
        } else if (std::strcmp(argv[i], "--out") == 0 && i + 1 < argc) {
            out_dir = argv[++i];
        } else {
            std::fprintf(stderr, "error: unexpected argument '%s'\n\n%s", argv[i], kUsage);
            return 2;
        }
    }
    if (!config_path) {
        std::fprintf(stderr, "error: --config <path> is required\n\n%s", kUsage);
        return 2;
    }
    int rc = bilap_run_config_file(config_path, out_dir, command);
    if (rc != BILAP_OK) {
        std::fprintf(stderr, "error: %s\n", bilap_last_error());
        return rc;
    }
    return 0;
}
