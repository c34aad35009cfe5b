#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lnorm/lnorm.hpp"

namespace lnorm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;       // unreadable input, parse errors, bad options
inline constexpr int kExitInfeasible = 3;  // word-size or oracle size limits

enum class Format { Text, Jsonl };

struct RunConfig {
  std::string input = "-";
  std::string mode = "l1";
  unsigned d = 0;        // 0: unset
  unsigned threads = 0;  // 0: largest power of d not above hardware parallelism
  bool preprocess = true;
  Format format = Format::Text;
  // bench only
  std::uint64_t seed = 1;
  std::size_t min_n = 18;
  std::size_t max_n = 22;
  std::size_t step_n = 2;
  unsigned trials = 3;
};

inline SolveMode solve_mode(const RunConfig& cfg) {
  if (cfg.mode == "ld") {
    if (cfg.d == 0) throw Error(ErrorCode::InvalidMode, "--mode ld requires --d");
    return SolveMode::ld(cfg.d);
  }
  if (cfg.d != 0) throw Error(ErrorCode::InvalidMode, "--d is only meaningful with --mode ld");
  if (cfg.mode == "l1") return SolveMode::l1();
  if (cfg.mode == "marg") return SolveMode::marg();
  throw Error(ErrorCode::InvalidMode, "unknown mode '" + cfg.mode + "'");
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::TooManyRows:
    case ErrorCode::TooLargeForOracle: return kExitInfeasible;
    default: return kExitInput;
  }
}

inline IntMatrix load_matrix(const RunConfig& cfg, std::istream& stdin_stream) {
  if (cfg.input == "-") return parse_matrix(stdin_stream);
  std::ifstream file(cfg.input);
  if (!file) throw std::runtime_error("cannot open '" + cfg.input + "'");
  return parse_matrix(file);
}

inline std::string shape(std::size_t rows, std::size_t cols) {
  return std::to_string(rows) + "×" + std::to_string(cols);
}

inline std::string format_strategy(const StrategyVector& s) {
  std::string out;
  for (std::size_t x = 0; x < s.entries.size(); ++x) {
    if (x) out += ' ';
    const int a = s.entries[x];
    out += s.mode.is_signed() ? (a > 0 ? "+1" : "-1") : std::to_string(a);
  }
  return out;
}

inline nlohmann::json to_json(const NormResult& r, double elapsed_ms) {
  return {
      {"mode", r.mode.name()},
      {"d", r.d()},
      {"value", r.value},
      {"argmax_word", r.argmax},
      {"strategy", r.strategy.entries},
      {"shape_before", {r.report.original_rows, r.report.original_cols}},
      {"shape_after", {r.report.final_rows, r.report.final_cols}},
      {"threads", r.threads},
      {"elapsed_ms", elapsed_ms},
  };
}

inline void print_text(std::ostream& out, SolveMode requested, const NormResult& r, double elapsed_ms) {
  out << "mode: " << requested.name() << " (d = " << requested.radix() << ")\n";
  out << "preprocessing: " << shape(r.report.original_rows, r.report.original_cols) << " → "
      << shape(r.report.final_rows, r.report.final_cols) << " (" << r.report.steps.size() << " steps)\n";
  for (const auto& s : r.report.steps) out << "  " << s.describe() << '\n';
  if (r.report.mode_downgraded) out << "  first row and column are zero: solved as l1\n";
  out << r.mode.label() << " = " << r.value << '\n';
  out << "argmax word: " << r.argmax << '\n';
  out << "strategy: " << format_strategy(r.strategy) << '\n';
  out << "threads: " << r.threads << '\n';
  out << "elapsed: " << std::fixed << std::setprecision(3) << elapsed_ms << " ms\n";
  out.unsetf(std::ios::floatfield);
}

template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

inline int run_compute(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SolveMode mode = solve_mode(cfg);
    const IntMatrix M = load_matrix(cfg, in);
    const auto t0 = std::chrono::steady_clock::now();
    const auto result = compute(M, mode, {cfg.threads, cfg.preprocess});
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (cfg.format == Format::Jsonl) {
      out << to_json(result, ms).dump() << '\n';
    } else {
      print_text(out, mode, result, ms);
    }
    return kExitOk;
  });
}

/// Solves with both engines on the (optionally reduced) matrix and compares
/// value and argmax word. With preprocessing on, the oracle also checks that
/// the reduction preserved the value whenever the original fits its limit.
inline int run_verify(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SolveMode mode = solve_mode(cfg);
    const IntMatrix M = load_matrix(cfg, in);

    Preprocessed prep{M, {}};
    prep.report.original_rows = prep.report.final_rows = M.rows();
    prep.report.original_cols = prep.report.final_cols = M.cols();
    if (cfg.preprocess) prep = preprocess(M, mode);
    const SolveMode solved = prep.report.solved_mode(mode);
    check_feasible(prep.matrix, solved, 64, TransposePolicy::Never);
    oracle::strategy_count(prep.matrix, solved);

    const auto t0 = std::chrono::steady_clock::now();
    auto fast = solve(prep.matrix, solved, cfg.threads ? cfg.threads : default_worker_count(solved.radix()));
    const auto t1 = std::chrono::steady_clock::now();
    auto naive = oracle::solve(prep.matrix, solved);
    const auto t2 = std::chrono::steady_clock::now();
    fast.report = naive.report = prep.report;

    bool ok = fast.value == naive.value && fast.argmax == naive.argmax;
    std::string original_note;
    if (cfg.preprocess) {
      try {
        const auto original = oracle::solve(M, mode);
        ok = ok && original.value == naive.value;
        original_note = std::to_string(original.value);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TooLargeForOracle) throw;
        original_note = "skipped (too large for oracle)";
      }
    }

    const double fast_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    const double naive_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
    if (cfg.format == Format::Jsonl) {
      auto a = to_json(fast, fast_ms);
      a["engine"] = "gray";
      auto b = to_json(naive, naive_ms);
      b["engine"] = "oracle";
      out << a.dump() << '\n' << b.dump() << '\n';
    } else {
      out << "[gray]\n";
      print_text(out, mode, fast, fast_ms);
      out << "[oracle]\n";
      print_text(out, mode, naive, naive_ms);
      if (!original_note.empty()) out << "oracle on unreduced matrix: " << original_note << '\n';
      out << (ok ? "verify: OK" : "verify: MISMATCH") << '\n';
    }
    return ok ? kExitOk : kExitMismatch;
  });
}

inline std::string cpu_model() {
  std::ifstream info("/proc/cpuinfo");
  std::string line;
  while (std::getline(info, line)) {
    if (line.rfind("model name", 0) == 0) {
      auto colon = line.find(':');
      if (colon != std::string::npos) return line.substr(line.find_first_not_of(' ', colon + 1));
    }
  }
  return "unknown";
}

inline int run_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.min_n < 14 || cfg.max_n > 26 || cfg.min_n > cfg.max_n || cfg.step_n == 0) {
      throw std::invalid_argument("bench sizes must satisfy 14 <= min-n <= max-n <= 26");
    }
    if (cfg.format == Format::Text) {
      out << "# cpu: " << cpu_model() << "\n# L1, n x n, entries in [-9, 9], seed " << cfg.seed << ", min of "
          << cfg.trials << " trials, 1 worker\n";
      out << std::setw(4) << "n" << std::setw(16) << "t_naive_ms" << std::setw(16) << "t_iterative_ms"
          << std::setw(10) << "ratio" << std::setw(8) << "agree" << '\n';
    }
    bool all_agree = true;
    for (std::size_t n = cfg.min_n; n <= cfg.max_n; n += cfg.step_n) {
      const auto row = oracle::bench_pair(n, cfg.trials, cfg.seed);
      all_agree = all_agree && row.agree;
      if (cfg.format == Format::Jsonl) {
        out << nlohmann::json{{"n", row.n},
                              {"t_naive_ms", row.naive_ms},
                              {"t_iterative_ms", row.iterative_ms},
                              {"ratio", row.ratio()},
                              {"value", row.value},
                              {"agree", row.agree}}
                   .dump()
            << '\n';
      } else {
        out << std::setw(4) << row.n << std::fixed << std::setprecision(3) << std::setw(16) << row.naive_ms
            << std::setw(16) << row.iterative_ms << std::setprecision(2) << std::setw(10) << row.ratio()
            << std::setw(8) << (row.agree ? "yes" : "NO") << '\n';
        out.unsetf(std::ios::floatfield);
      }
      out.flush();
    }
    return all_agree ? kExitOk : kExitMismatch;
  });
}

}  // namespace lnorm::cli
