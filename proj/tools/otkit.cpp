// otkit: candidate generation, constraint application, ranking, display.
//
// The subcommands are pipe-composable filters:
//
//   otkit gen "hessian, [t,a], 2" | otkit con PARSE-SEG NO-STRUC |
//     otkit eval | otkit tree

#include <fcntl.h>
#include <sys/ioctl.h>
#include <termios.h>
#include <unistd.h>

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otkit/otkit.hpp"

namespace {

int default_page_height() {
    winsize ws{};
    if (ioctl(STDOUT_FILENO, TIOCGWINSZ, &ws) == 0 && ws.ws_row > 1) return ws.ws_row - 1;
    return 24;
}

// Raw single-key reads from the controlling terminal, so paging works even
// with standard input occupied by the data stream.
class TtyKeys {
public:
    TtyKeys() : fd_(open("/dev/tty", O_RDONLY)) {
        if (fd_ >= 0 && tcgetattr(fd_, &saved_) == 0) {
            termios raw = saved_;
            raw.c_lflag &= ~static_cast<tcflag_t>(ICANON | ECHO);
            raw.c_cc[VMIN] = 1;
            raw.c_cc[VTIME] = 0;
            restore_ = tcsetattr(fd_, TCSANOW, &raw) == 0;
        }
    }
    ~TtyKeys() {
        if (restore_) tcsetattr(fd_, TCSANOW, &saved_);
        if (fd_ >= 0) close(fd_);
    }
    TtyKeys(const TtyKeys&) = delete;
    TtyKeys& operator=(const TtyKeys&) = delete;

    bool ok() const { return fd_ >= 0; }
    int read_key() const {
        unsigned char c = 0;
        return read(fd_, &c, 1) == 1 ? c : -1;
    }

private:
    int fd_ = -1;
    termios saved_{};
    bool restore_ = false;
};

int run_show(int page_height) {
    if (!isatty(STDOUT_FILENO))
        return otkit::cmd_show(std::cin, std::cout, 0, nullptr, std::cerr);
    TtyKeys keys;
    if (!keys.ok()) return otkit::cmd_show(std::cin, std::cout, 0, nullptr, std::cerr);
    if (page_height <= 0) page_height = default_page_height();
    return otkit::cmd_show(std::cin, std::cout, page_height, [&] { return keys.read_key(); },
                           std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);

    CLI::App app{"optimality-theoretic generation, constraint ranking and display"};
    app.require_subcommand(1);

    std::string gen_argument;
    CLI::App* gen = app.add_subcommand("gen", "generate the candidate set for an input");
    gen->add_option("argument", gen_argument, "\"GrammarName, [m1,...,mn], MaxEpenthetics\"")
        ->required();

    std::vector<std::string> con_files;
    bool con_wrap = false;
    CLI::App* con = app.add_subcommand("con", "annotate candidates with constraint violations");
    con->add_option("scripts", con_files, "constraint script files, highest-ranked first");
    con->add_flag("--wrap", con_wrap, "wrap main-part-only scripts in the standard prologue/epilogue");

    CLI::App* eval = app.add_subcommand("eval", "sort candidates by violation vector");
    CLI::App* prune = app.add_subcommand("prune", "keep only candidates with the minimal vector");
    CLI::App* tree = app.add_subcommand("tree", "draw the first candidate as an ASCII tree");
    CLI::App* count = app.add_subcommand("count", "reformat as numbered candidate/vector blocks");

    int page_height = 0;
    CLI::App* show = app.add_subcommand("show", "page output one screenful at a time");
    show->add_option("--page-height", page_height, "lines per page (default: terminal height - 1)");

    std::string run_argument;
    std::vector<std::string> run_files;
    bool run_wrap = false;
    bool run_prune_each = false;
    CLI::App* run = app.add_subcommand("run", "one-shot gen | con | eval with a report");
    run->add_option("argument", run_argument, "\"GrammarName, [m1,...,mn], MaxEpenthetics\"")
        ->required();
    run->add_option("scripts", run_files, "constraint script files, highest-ranked first");
    run->add_flag("--wrap", run_wrap, "wrap main-part-only scripts in the standard prologue/epilogue");
    run->add_flag("--prune-each", run_prune_each, "prune non-optimal candidates after each constraint");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (gen->parsed()) return otkit::cmd_gen(gen_argument, std::cout, std::cerr);
    if (con->parsed()) return otkit::cmd_con(con_files, con_wrap, std::cin, std::cout, std::cerr);
    if (eval->parsed()) return otkit::cmd_eval(std::cin, std::cout, std::cerr);
    if (prune->parsed()) return otkit::cmd_prune(std::cin, std::cout, std::cerr);
    if (tree->parsed()) return otkit::cmd_tree(std::cin, std::cout, std::cerr);
    if (count->parsed()) return otkit::cmd_count(std::cin, std::cout, std::cerr);
    if (show->parsed()) return run_show(page_height);
    if (run->parsed()) {
        otkit::RunConfig config;
        try {
            otkit::GenArgument arg = otkit::parse_gen_argument(run_argument);
            config.grammar_name = arg.grammar_name;
            config.input_markers = arg.input.markers;
            config.max_epenthesis = arg.input.max_epenthesis;
        } catch (const otkit::OtError& e) {
            std::cerr << "otkit run: " << e.what() << '\n';
            return 1;
        }
        config.constraint_files = run_files;
        config.wrap_mode = run_wrap;
        config.prune_each = run_prune_each;
        return otkit::cmd_run(config, std::cout, std::cerr);
    }
    return 1;
}
