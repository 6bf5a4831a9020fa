#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prodcheck/derivation.hpp"

namespace prodcheck {

namespace exit_code {
inline constexpr int guarded_live = 0;
inline constexpr int guarded_finite = 1;
inline constexpr int not_guarded = 2;
inline constexpr int input_error = 3;
inline constexpr int fuse_exceeded = 4;
} // namespace exit_code

struct CliConfig {
    enum class Mode { check, derive, trs };
    enum class Output { text, json };

    std::string input;
    Mode mode = Mode::check;
    std::string goal;      // derive mode
    std::size_t steps = 10; // derive mode
    std::size_t fuse = default_fuse;
    Output output = Output::text;
    bool dot = false;
    bool parallel = true;
};

/// Parses argv into a config. Returns an exit code >= 0 when the process should
/// stop (help requested or usage error), -1 otherwise.
int parse_command_line(int argc, const char* const* argv, CliConfig& config, std::ostream& out, std::ostream& err);

int run(const CliConfig& config, std::ostream& out, std::ostream& err);

std::string format_text(const ProductivityReport& report, const Program& program);
std::string format_json(const ProductivityReport& report, const Program& program);
std::string format_trace_text(const DerivationTrace& trace, const Program& program);
std::string format_trace_json(const DerivationTrace& trace, const Program& program);

/// Exit code implied by a report.
int report_exit_code(const ProductivityReport& report);

} // namespace prodcheck
