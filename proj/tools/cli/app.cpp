#include "app.hpp"

#include "common.hpp"

#include "moviedesc/error.hpp"

#include <CLI11.hpp>

namespace moviedesc::cli {

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    Context ctx{out, err};
    CLI::App app{"Movie description corpus tools", "moviedesc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "moviedesc 0.1.0");
    add_signal_commands(app, ctx);
    add_text_commands(app, ctx);
    add_corpus_commands(app, ctx);
    add_baseline_commands(app, ctx);
    add_eval_commands(app, ctx);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << "moviedesc 0.1.0\n";
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}

} // namespace moviedesc::cli
