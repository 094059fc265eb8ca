#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lzgram.hpp"

namespace lzgram::cli {

// Process exit codes.
enum exit_code : int {
  ok = 0,
  usage = 1,
  malformed_input = 2,
  verification_failed = 3,
};

namespace detail {

struct CliFailure {
  int code;
  std::string message;
};

inline Text read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliFailure{malformed_input, "cannot read " + path};
  return Text(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline void emit(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !f.write(data.data(), static_cast<std::streamsize>(data.size())))
    throw CliFailure{malformed_input, "cannot write " + path};
}

inline Text require_nonempty(Text text, const std::string& path) {
  if (text.empty()) throw CliFailure{malformed_input, path + ": input is empty"};
  return text;
}

inline int code_for(errc e) {
  switch (e) {
    case errc::cyclic:
      return verification_failed;
    case errc::out_of_range:
    case errc::bad_base:
      return usage;
    default:
      return malformed_input;
  }
}

inline std::string format_ratio(double r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

}  // namespace detail

/// Runs one CLI command. Output that would go to stdout goes to `out`,
/// diagnostics to `err`; the return value is the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grammar-based compression via LZ77, phrase refinement, CNF and Bisection"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string method_name = "best";
  std::size_t base = 0;
  std::size_t pos = 0;
  std::size_t len = 1;

  auto* parse_cmd = app.add_subcommand("parse", "Write the LZ77 token stream");
  auto* compress_cmd = app.add_subcommand("compress", "Write a CNF grammar for the input");
  auto* decompress_cmd = app.add_subcommand("decompress", "Expand a grammar file");
  auto* stats_cmd = app.add_subcommand("stats", "Print stage sizes and the ratio certificate");
  auto* ra_build_cmd = app.add_subcommand("ra-build", "Build the random-access block structure");
  auto* ra_access_cmd = app.add_subcommand("ra-access", "Read bytes through a block structure");
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
  auto* smallest_cmd = oracle_cmd->add_subcommand("smallest", "Exact smallest grammar size (n <= 8)");
  auto* tape_cmd = app.add_subcommand("tape-run", "Run the tape-instrumented LZ77 parser");
  oracle_cmd->require_subcommand(1);

  for (auto* cmd : {parse_cmd, compress_cmd, decompress_cmd, stats_cmd, ra_build_cmd,
                    ra_access_cmd, smallest_cmd, tape_cmd})
    cmd->add_option("input", input, "Input file")->required();
  for (auto* cmd : {parse_cmd, compress_cmd, decompress_cmd, ra_build_cmd, ra_access_cmd,
                    tape_cmd})
    cmd->add_option("-o", output, "Output file (default: stdout)");
  compress_cmd->add_option("--method", method_name, "best | lz77cnf | bisection")
      ->check(CLI::IsMember({"best", "lz77cnf", "bisection"}));
  ra_build_cmd->add_option("--base", base, "Block base b >= 2; 0 picks the default");
  ra_access_cmd->add_option("--pos", pos, "1-based position")->required();
  ra_access_cmd->add_option("--len", len, "Number of bytes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*parse_cmd) {
      std::ostringstream os;
      write_parse(os, parse_lz77(detail::read_file(input)));
      detail::emit(output, os.str(), out);
    } else if (*compress_cmd) {
      const Text text = detail::require_nonempty(detail::read_file(input), input);
      const Grammar g = compress(text, *method_from_name(method_name));
      std::ostringstream os;
      write_grammar(os, g);
      std::istringstream back(os.str());
      std::size_t declared = 0;
      if (expand(read_grammar(back, &declared)) != text || declared != text.size()) {
        err << "compress: written grammar does not expand to the input\n";
        return verification_failed;
      }
      detail::emit(output, os.str(), out);
    } else if (*decompress_cmd) {
      std::istringstream in(detail::read_file(input));
      std::size_t declared = 0;
      const Grammar g = read_grammar(in, &declared);
      const Text text = expand(g);
      if (text.size() != declared) {
        err << "decompress: expansion has " << text.size() << " bytes, header says " << declared
            << "\n";
        return verification_failed;
      }
      detail::emit(output, text, out);
    } else if (*stats_cmd) {
      const Certificate c = make_certificate(detail::require_nonempty(detail::read_file(input), input));
      out << "lz77_phrases=" << c.lz77_phrases << '\n'
          << "broken_phrases=" << c.broken_phrases << '\n'
          << "cnf_size=" << c.cnf_size << '\n'
          << "bisection_size=" << c.bisection_size << '\n'
          << "best_size=" << c.best_size << '\n'
          << "ratio_upper_bound=" << detail::format_ratio(c.ratio_upper_bound()) << '\n';
    } else if (*ra_build_cmd) {
      const Text text = detail::require_nonempty(detail::read_file(input), input);
      const BlockStructure bs =
          build_block_structure(text, base == 0 ? default_base(text.size()) : base);
      std::ostringstream os;
      write_block_structure(os, bs);
      detail::emit(output, os.str(), out);
    } else if (*ra_access_cmd) {
      std::istringstream in(detail::read_file(input));
      const BlockStructure bs = read_block_structure(in);
      detail::emit(output, extract(bs, pos, len), out);
    } else if (*smallest_cmd) {
      out << "smallest_grammar_size=" << oracle::smallest_grammar_size(detail::read_file(input))
          << '\n';
    } else if (*tape_cmd) {
      const TapeRun run = run_tape_parser(detail::read_file(input));
      if (!output.empty()) {
        std::ostringstream os;
        write_parse(os, run.parse);
        detail::emit(output, os.str(), out);
      }
      out << "reversals=" << run.stats.reversals << '\n'
          << "steps=" << run.stats.steps << '\n'
          << "registers=" << run.stats.registers << '\n'
          << "max_register=" << run.stats.max_register << '\n';
    }
  } catch (const detail::CliFailure& f) {
    err << f.message << '\n';
    return f.code;
  } catch (const error& e) {
    err << e.what() << '\n';
    return detail::code_for(e.code());
  }
  return ok;
}

}  // namespace lzgram::cli
