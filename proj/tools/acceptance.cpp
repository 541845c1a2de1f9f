// Acceptance run: one PASS/FAIL line per criterion, followed by details.
// Exits nonzero only when a failure is not on the known-findings list.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steklov/steklov.hpp"

using namespace steklov;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  int criterion;
  bool passed;
  std::string summary;
  std::vector<std::string> details;
  bool known_finding = false;
};

std::string entry_line(const TableReproduction& t, const TableEntry& e) {
  std::ostringstream os;
  os << "table " << t.number << " " << e.row << " " << e.column << ": computed " << format_number(e.computed, 6)
     << " printed " << format_number(e.reference, 6) << " deviation " << format_number(e.deviation(), 3)
     << (e.relative ? " (relative)" : " (absolute)") << (e.within ? "" : " OUT OF TOLERANCE");
  if (!e.note.empty()) os << " [" << e.note << "]";
  return os.str();
}

void add_notes(Outcome& o, const TableReproduction& t, bool all_entries) {
  for (const auto& e : t.entries) {
    if (all_entries || !e.within || !e.note.empty()) o.details.push_back(entry_line(t, e));
  }
}

Outcome pointwise(int criterion, const std::vector<int>& numbers, TableReproducer& rep) {
  const auto t0 = Clock::now();
  Outcome o{criterion, true, "", {}};
  std::size_t within = 0, total = 0;
  for (int n : numbers) {
    const auto t = rep.reproduce(n);
    within += t.within_count();
    total += t.entries.size();
    for (const auto& e : t.entries) {
      if (!e.within || !e.note.empty()) o.details.push_back(entry_line(t, e));
    }
  }
  const double secs = seconds_since(t0);
  o.passed = within == total && secs < 10.0;
  o.summary = std::to_string(within) + "/" + std::to_string(total) + " entries within tolerance, " +
              format_number(secs, 3) + " s (budget 10 s)";
  return o;
}

Outcome rerr_tables(TableReproducer& rep) {
  Outcome o{3, true, "", {}};
  std::size_t within = 0, total = 0;
  std::map<std::string, int> policies;
  for (const auto& ref : reference::kRerrTables) {
    const auto t = rep.reproduce(ref.number);
    within += t.within_count();
    total += t.entries.size();
    for (const auto& e : t.entries) {
      ++policies[e.note.substr(0, e.note.find(';'))];
      if (!e.within) o.details.push_back(entry_line(t, e));
    }
  }
  o.passed = within == total;
  std::string used;
  for (const auto& [p, n] : policies) used += (used.empty() ? "" : ", ") + p + " x" + std::to_string(n);
  o.summary = std::to_string(within) + "/" + std::to_string(total) + " entries within 5% (best policy per entry: " +
              used + ")";
  return o;
}

Outcome corner_table(TableReproducer& rep) {
  Outcome o{4, true, "", {}};
  const auto t = rep.reproduce(11);
  bool improves = true;
  for (std::size_t i = 0; i < t.entries.size(); i += 4) {
    const auto& e = t.entries;
    if (!(e[i + 1].computed < e[i].computed) || !(e[i + 3].computed < e[i + 2].computed)) {
      improves = false;
      o.details.push_back("reduction does not improve at " + e[i].row);
    }
  }
  add_notes(o, t, false);
  o.passed = t.all_within() && improves;
  o.summary = std::to_string(t.within_count()) + "/" + std::to_string(t.entries.size()) +
              " entries within 5%; reduction improves both norms at every M: " + (improves ? "yes" : "no");
  return o;
}

Outcome experiments(TableReproducer& rep, unsigned threads) {
  Outcome o{5, true, "", {}};
  // The printed M=5 row of the bd1 table matches 42 non-constant modes, not 40.
  const std::set<std::string> known{"12/M=5/rerr_2"};
  std::size_t within = 0, total = 0;
  bool unexpected = false;
  bool known_hit = false;
  for (int n : {12, 13, 14}) {
    const auto t = rep.reproduce(n);
    within += t.within_count();
    total += t.entries.size();
    for (const auto& e : t.entries) {
      const bool is_known = known.count(std::to_string(n) + "/" + e.row + "/" + e.column) > 0;
      if (!e.within) {
        (is_known ? known_hit : unexpected) = true;
        o.details.push_back(entry_line(t, e) + (is_known ? " (known finding: printed row uses 42 modes)" : ""));
      } else if (n == 13 && e.row == "M=2" && e.column == "rerr_inf") {
        o.details.push_back("table 13: printed rerr_inf and rerr_2 columns are transposed; compared accordingly");
      }
    }
  }
  bool interior = true;
  for (const char* datum : {"bd1", "bd2", "bd3"}) {
    const Rectangle rect(1.0);
    const auto pb = builtin_problem(datum, rect);
    StudyOptions opt;
    opt.policy = pb.kind == ProblemKind::Robin ? SelectionPolicy::GlobalSortedInclusive : SelectionPolicy::GlobalSorted;
    opt.coefficients.threads = threads;
    opt.interior = InteriorErrorOptions{101, 64, threads};
    const auto rep5 = convergence_study(pb.data, pb.kind, pb.b, rect, {5}, pb.exact, opt).reports.front();
    const bool ok = *rep5.err_sup_center < *rep5.err_sup_interior;
    interior = interior && ok;
    o.details.push_back(std::string("interior property ") + datum + " M=5: centered sup " +
                        format_number(*rep5.err_sup_center, 4) + " < full-grid sup " +
                        format_number(*rep5.err_sup_interior, 4) + (ok ? "" : " VIOLATED"));
  }
  o.passed = within == total && interior;
  o.known_finding = !o.passed && interior && known_hit && !unexpected;
  o.summary = std::to_string(within) + "/" + std::to_string(total) + " entries within 5%; interior property " +
              (interior ? "holds" : "fails") + " for bd1, bd2, bd3";
  return o;
}

Outcome properties(unsigned threads) {
  Outcome o{6, true, "", {}};
  const auto t0 = Clock::now();
  PropertyOptions opt;
  opt.threads = threads;
  std::size_t checks = 0;
  bool all = true;
  for (double h : {1.0, 0.8, 0.5}) {
    const auto report = property_suite(Rectangle(h), 5, opt);
    checks += report.checks.size();
    all = all && report.all_passed();
    for (const auto& c : report.checks) {
      o.details.push_back(std::string(c.passed ? "ok   " : "FAIL ") + "h=" + format_number(h, 3) + " " + c.name +
                          ": worst " + format_number(c.worst, 3) + " (tolerance " + format_number(c.tolerance, 3) + ")");
    }
  }
  const double secs = seconds_since(t0);
  o.passed = all && secs < 60.0;
  o.summary = std::to_string(checks) + " checks at M=5 for h in {1, 0.8, 0.5}, " +
              (all ? "all passed" : "some failed") + ", " + format_number(secs, 3) + " s (budget 60 s)";
  return o;
}

Outcome figure_data() {
  Outcome o{7, true, "", {}};
  for (double h : {1.0, 0.8, 0.5}) {
    const auto spec = build_sorted_spectrum(Rectangle(h), 79);
    // Exponentially close pairs (e.g. F2/F6) agree to rounding and are ordered by family tag.
    bool sorted = true;
    for (std::size_t i = 1; i < spec.size(); ++i) {
      sorted = sorted && spec[i].delta - spec[i - 1].delta > -kDegeneracyTolerance;
    }
    const double d10 = spec[9].delta, d40 = spec[39].delta, d80 = spec[79].delta;
    const bool grows = d80 > d40 && d40 > d10;
    o.passed = o.passed && sorted && grows && spec.size() == 80;
    o.details.push_back("h=" + format_number(h, 3) + ": " + std::to_string(spec.size()) + " eigenvalues, " +
                        (sorted ? "nondecreasing up to rounding" : "NOT SORTED") + ", delta10=" + format_number(d10, 6) +
                        " delta40=" + format_number(d40, 6) + " delta80=" + format_number(d80, 6));
  }
  o.summary = "first 80 eigenvalues for h in {1, 0.8, 0.5} are nondecreasing and unbounded";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  unsigned threads = 1;
  bool verbose = false;
  app.add_option("--threads", threads, "worker threads");
  app.add_flag("--verbose", verbose, "print details for every criterion");
  CLI11_PARSE(app, argc, argv);

  try {
    TableOptions topt;
    topt.coefficients.threads = threads;
    TableReproducer rep(topt);
    std::vector<Outcome> outcomes;
    outcomes.push_back(pointwise(1, {1}, rep));
    outcomes.push_back(pointwise(2, {2, 3}, rep));
    outcomes.push_back(rerr_tables(rep));
    outcomes.push_back(corner_table(rep));
    outcomes.push_back(experiments(rep, threads));
    outcomes.push_back(properties(threads));
    outcomes.push_back(figure_data());

    bool unexpected = false;
    for (const auto& o : outcomes) {
      const char* status = o.passed ? "PASS" : o.known_finding ? "FAIL (known finding)" : "FAIL";
      std::cout << "criterion " << o.criterion << ": " << status << " - " << o.summary << '\n';
      unexpected = unexpected || (!o.passed && !o.known_finding);
    }
    std::cout << "criterion 8: NOT REPRODUCIBLE - the 2-norm bound needs a constant that is not computed; "
                 "the max-principle and spectral-tail checks of criterion 6 stand in for it\n";
    for (const auto& o : outcomes) {
      if (o.details.empty() || (o.passed && !verbose && o.criterion != 1 && o.criterion != 5)) continue;
      std::cout << "\ncriterion " << o.criterion << " details:\n";
      for (const auto& d : o.details) std::cout << "  " << d << '\n';
    }
    return unexpected ? 1 : 0;
  } catch (const Error& e) {
    std::cerr << "acceptance run aborted: " << e.what() << '\n';
    return 2;
  }
}
