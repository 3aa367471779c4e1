#include "lk/report.hpp"

#include <iomanip>
#include <sstream>

namespace lk {

namespace {

const char* mode_name(CheckMode m) {
  switch (m) {
    case CheckMode::required: return "required";
    case CheckMode::expected_failure: return "expected_failure";
    case CheckMode::informational: return "informational";
  }
  return "?";
}

nlohmann::json failure_json(const Failure& f) {
  return {{"check", f.check},   {"instance", f.instance},   {"seed", f.seed},         {"forest", f.forest},
          {"context", f.context}, {"generator", f.generator}, {"expected", f.expected}, {"got", f.got}};
}

void failure_text(std::ostringstream& out, const Failure& f) {
  out << "  " << f.check << " instance " << f.instance << " seed " << f.seed;
  if (!f.context.empty()) out << " (" << f.context << ")";
  out << "\n    generator: " << f.generator << "\n    expected:  " << f.expected << "\n    got:       " << f.got << "\n";
  std::istringstream lines(f.forest);
  for (std::string line; std::getline(lines, line);) out << "    | " << line << "\n";
}

std::vector<int> spinc_values(const CharVector& k) {
  std::vector<int> out;
  for (int i = 0; i < k.size(); ++i) out.push_back(k[i]);
  return out;
}

std::string steps_text(const std::vector<ProfileStep>& steps) {
  std::string s;
  for (const auto& st : steps) {
    if (!s.empty()) s += " ";
    s += to_string(st.level) + ":" + std::to_string(st.dim);
  }
  return s.empty() ? "-" : s;
}

}  // namespace

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"mode", mode_name(c.mode)}, {"checked", c.checked}, {"failed", c.failed}, {"ok", c.ok()}});
  nlohmann::json failures = nlohmann::json::array(), witnesses = nlohmann::json::array();
  for (const auto& f : r.failures) failures.push_back(failure_json(f));
  for (const auto& f : r.witnesses) witnesses.push_back(failure_json(f));
  return {{"suite", r.suite},
          {"seed", r.seed},
          {"instances", r.instances},
          {"margin", r.margin},
          {"checked", r.checked},
          {"skipped", r.skipped},
          {"passed", r.passed()},
          {"elapsed_seconds", r.elapsed_seconds},
          {"checks", checks},
          {"failures", failures},
          {"witnesses", witnesses},
          {"notes", r.notes}};
}

std::string to_text(const SuiteReport& r) {
  std::ostringstream out;
  out << "suite " << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
  out << "seed " << r.seed << ", instances " << r.instances << ", margin " << r.margin << ", checked " << r.checked
      << ", skipped " << r.skipped << ", " << std::fixed << std::setprecision(2) << r.elapsed_seconds << " s\n";
  for (const auto& c : r.checks)
    out << "  " << std::left << std::setw(44) << c.name << std::right << std::setw(12) << c.checked << " checked "
        << std::setw(8) << c.failed << " failed  " << (c.ok() ? "ok" : "NOT OK")
        << (c.mode == CheckMode::required ? "" : std::string(" (") + mode_name(c.mode) + ")") << "\n";
  if (!r.failures.empty()) {
    out << "failures:\n";
    for (const auto& f : r.failures) failure_text(out, f);
  }
  if (!r.witnesses.empty()) {
    out << "witnesses:\n";
    for (const auto& f : r.witnesses) failure_text(out, f);
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

nlohmann::json to_json(const HomologyTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries)
    entries.push_back({{"spinc", spinc_values(e.spinc)}, {"grading", to_string(e.grading)}, {"dim", e.dim}, {"stable", e.stable}});
  return {{"margin", t.margin}, {"ucap", t.ucap}, {"floor", t.floor ? nlohmann::json(to_string(*t.floor)) : nlohmann::json()}, {"entries", entries}};
}

std::string to_text(const HomologyTable& t) {
  std::ostringstream out;
  out << "margin " << t.margin << ", ucap " << t.ucap << ", exact " << (t.floor ? "above grading " + to_string(*t.floor) : std::string("everywhere")) << "\n";
  out << std::left << std::setw(20) << "spinc" << std::setw(12) << "grading" << std::setw(6) << "dim" << "stable\n";
  for (const auto& e : t.entries)
    out << std::setw(20) << to_string(e.spinc) << std::setw(12) << to_string(e.grading) << std::setw(6) << e.dim
        << (e.stable ? "yes" : "no") << "\n";
  return out.str();
}

nlohmann::json to_json(const FiltrationTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : e.steps) steps.push_back({{"level", to_string(s.level)}, {"dim", s.dim}});
    entries.push_back({{"spinc", spinc_values(e.spinc)}, {"grading", to_string(e.grading)}, {"steps", steps}, {"stable", e.stable}});
  }
  return {{"margin", t.margin}, {"ucap", t.ucap}, {"floor", t.floor ? nlohmann::json(to_string(*t.floor)) : nlohmann::json()}, {"entries", entries}};
}

std::string to_text(const FiltrationTable& t) {
  std::ostringstream out;
  out << "margin " << t.margin << ", ucap " << t.ucap << ", exact " << (t.floor ? "above grading " + to_string(*t.floor) : std::string("everywhere")) << "\n";
  out << std::left << std::setw(20) << "spinc" << std::setw(12) << "grading" << std::setw(8) << "stable" << "alpha:dim\n";
  for (const auto& e : t.entries)
    out << std::setw(20) << to_string(e.spinc) << std::setw(12) << to_string(e.grading) << std::setw(8)
        << (e.stable ? "yes" : "no") << steps_text(e.steps) << "\n";
  return out.str();
}

}  // namespace lk
