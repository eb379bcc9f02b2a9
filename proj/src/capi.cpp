#include "curvlie/curvlie.h"

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>

#include "curvlie/report.hpp"

namespace {

using curvlie::ErrorCode;

thread_local std::string g_last_error;

struct BadHandle : std::runtime_error {
  BadHandle() : std::runtime_error("bad handle") {}
};

template <class T, std::uint32_t Magic>
struct Handle {
  std::uint32_t magic = Magic;
  T value;

  T* get() {
    if (magic != Magic) throw BadHandle();
    return &value;
  }
};

int status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return CURVLIE_ERROR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return CURVLIE_ERROR_PARSE;
    case ErrorCode::DivisionByZero: return CURVLIE_ERROR_DIVISION_BY_ZERO;
    case ErrorCode::Singular: return CURVLIE_ERROR_SINGULAR;
    case ErrorCode::VariableMismatch: return CURVLIE_ERROR_VARIABLE_MISMATCH;
    case ErrorCode::MissingVariable: return CURVLIE_ERROR_MISSING_VARIABLE;
    case ErrorCode::BudgetExceeded: return CURVLIE_ERROR_BUDGET_EXCEEDED;
    case ErrorCode::Internal: return CURVLIE_ERROR_INTERNAL;
  }
  return CURVLIE_ERROR_INTERNAL;
}

template <class F>
int guard(F&& f) {
  try {
    f();
    return CURVLIE_OK;
  } catch (const BadHandle& e) {
    g_last_error = e.what();
    return CURVLIE_ERROR_BAD_HANDLE;
  } catch (const curvlie::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CURVLIE_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return CURVLIE_ERROR_INTERNAL;
  }
}

struct ReportState {
  curvlie::Report report;
  int verbosity = 0;
  std::string rendered;
};

}  // namespace

struct curvlie_config_s : Handle<curvlie::RunConfig, 0x43464731> {};
struct curvlie_report_s : Handle<ReportState, 0x52505431> {};

#define CURVLIE_NONNULL(p)                              \
  do {                                                  \
    if (!(p)) {                                         \
      g_last_error = #p " is null";                     \
      return CURVLIE_ERROR_NULL_POINTER;                \
    }                                                   \
  } while (0)

extern "C" {

const char* curvlie_version(void) { return "1.0.0"; }

const char* curvlie_status_name(int status) {
  switch (status) {
    case CURVLIE_OK: return "ok";
    case CURVLIE_ERROR_INVALID_ARGUMENT: return "invalid argument";
    case CURVLIE_ERROR_PARSE: return "parse error";
    case CURVLIE_ERROR_DIVISION_BY_ZERO: return "division by zero";
    case CURVLIE_ERROR_SINGULAR: return "singular";
    case CURVLIE_ERROR_VARIABLE_MISMATCH: return "variable mismatch";
    case CURVLIE_ERROR_MISSING_VARIABLE: return "missing variable";
    case CURVLIE_ERROR_BUDGET_EXCEEDED: return "budget exceeded";
    case CURVLIE_ERROR_INTERNAL: return "internal error";
    case CURVLIE_ERROR_NULL_POINTER: return "null pointer";
    case CURVLIE_ERROR_BAD_HANDLE: return "bad handle";
    default: return "unknown status";
  }
}

const char* curvlie_last_error(void) { return g_last_error.c_str(); }

int curvlie_config_init(curvlie_config_t* config, const char* subcommand) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(subcommand);
  return guard([&] {
    static const std::set<std::string> known = {"",      "curvature", "groebner", "invariant-space",
                                                "solve", "verify",    "catalog"};
    if (!known.count(subcommand))
      throw curvlie::Error(curvlie::ErrorCode::InvalidArgument, std::string("unknown subcommand '") + subcommand + "'");
    auto h = std::make_unique<curvlie_config_s>();
    h->value.subcommand = subcommand;
    *config = h.release();
  });
}

int curvlie_config_destroy(curvlie_config_t config) {
  if (!config) return CURVLIE_OK;
  return guard([&] {
    config->get();
    config->magic = 0;
    delete config;
  });
}

int curvlie_config_add_argument(curvlie_config_t config, const char* argument) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(argument);
  return guard([&] { config->get()->arguments.emplace_back(argument); });
}

int curvlie_config_set_input(curvlie_config_t config, const char* key, const char* path) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(key);
  CURVLIE_NONNULL(path);
  return guard([&] {
    std::string k = key;
    if (k != "algebra" && k != "metric") throw curvlie::Error(ErrorCode::InvalidArgument, "unknown input '" + k + "'");
    config->get()->inputs[k] = path;
  });
}

int curvlie_config_set_det_sign(curvlie_config_t config, int det_sign) {
  CURVLIE_NONNULL(config);
  return guard([&] {
    if (det_sign != 1 && det_sign != -1) throw curvlie::Error(ErrorCode::InvalidArgument, "det sign must be +1 or -1");
    config->get()->det_sign = det_sign;
  });
}

int curvlie_config_add_r(curvlie_config_t config, const char* r) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(r);
  return guard([&] { config->get()->r_samples.push_back(curvlie::Rational::parse(r)); });
}

int curvlie_config_add_q_block(curvlie_config_t config, int q) {
  CURVLIE_NONNULL(config);
  return guard([&] {
    if (q < 1 || q > 5) throw curvlie::Error(ErrorCode::InvalidArgument, "Q block index must be 1..5");
    config->get()->q_blocks.push_back(q);
  });
}

int curvlie_config_set_jobs(curvlie_config_t config, unsigned jobs) {
  CURVLIE_NONNULL(config);
  return guard([&] {
    if (jobs == 0) throw curvlie::Error(ErrorCode::InvalidArgument, "jobs must be positive");
    config->get()->jobs = jobs;
  });
}

int curvlie_config_set_budget(curvlie_config_t config, size_t max_pairs, size_t max_monomials, size_t max_megabytes) {
  CURVLIE_NONNULL(config);
  return guard([&] {
    auto& b = config->get()->budget;
    b.max_pairs = max_pairs;
    b.max_monomials = max_monomials;
    b.max_megabytes = max_megabytes;
  });
}

int curvlie_config_set_flag(curvlie_config_t config, const char* name, int value) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(name);
  return guard([&] {
    auto* c = config->get();
    std::string n = name;
    bool v = value != 0;
    if (n == "ricci") c->ricci = v;
    else if (n == "nabla-r") c->nabla_r = v;
    else if (n == "signature") c->signature = v;
    else if (n == "certificate") c->certificate = v;
    else if (n == "catalog") c->catalog = v;
    else throw curvlie::Error(ErrorCode::InvalidArgument, "unknown flag '" + n + "'");
  });
}

int curvlie_config_set_option(curvlie_config_t config, const char* name, const char* value) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(name);
  CURVLIE_NONNULL(value);
  return guard([&] {
    auto* c = config->get();
    std::string n = name;
    if (n == "eval") c->eval = value;
    else if (n == "lambda") c->lambda = value;
    else throw curvlie::Error(ErrorCode::InvalidArgument, "unknown option '" + n + "'");
  });
}

int curvlie_config_set_verbosity(curvlie_config_t config, int verbosity) {
  CURVLIE_NONNULL(config);
  return guard([&] { config->get()->verbosity = verbosity; });
}

int curvlie_run(curvlie_config_t config, curvlie_report_t* report) {
  CURVLIE_NONNULL(config);
  CURVLIE_NONNULL(report);
  return guard([&] {
    auto h = std::make_unique<curvlie_report_s>();
    h->value.report = curvlie::run(*config->get());
    h->value.verbosity = config->get()->verbosity;
    *report = h.release();
  });
}

int curvlie_report_destroy(curvlie_report_t report) {
  if (!report) return CURVLIE_OK;
  return guard([&] {
    report->get();
    report->magic = 0;
    delete report;
  });
}

int curvlie_report_exit_code(curvlie_report_t report, int* exit_code) {
  CURVLIE_NONNULL(report);
  CURVLIE_NONNULL(exit_code);
  return guard([&] { *exit_code = report->get()->report.exit_code; });
}

int curvlie_report_render(curvlie_report_t report, int format, const char** text, size_t* length) {
  CURVLIE_NONNULL(report);
  CURVLIE_NONNULL(text);
  return guard([&] {
    if (format != CURVLIE_FORMAT_JSON && format != CURVLIE_FORMAT_TEXT)
      throw curvlie::Error(ErrorCode::InvalidArgument, "unknown format");
    auto* st = report->get();
    st->rendered = curvlie::emit_report(
        st->report, format == CURVLIE_FORMAT_JSON ? curvlie::OutputFormat::Json : curvlie::OutputFormat::Text,
        st->verbosity);
    *text = st->rendered.c_str();
    if (length) *length = st->rendered.size();
  });
}

}  // extern "C"
