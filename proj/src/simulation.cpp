#include "tgd/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "fit_internal.hpp"

namespace tgd {

namespace {

constexpr int kChunk = 64;

// Runs work(first, last) over [0, total) in fixed chunks on `threads`
// workers.  Chunk results are reduced in index order, so the outcome does
// not depend on scheduling.
template <typename Acc, typename Work>
Acc run_chunked(int total, int threads, Work&& work) {
  const int chunks = (total + kChunk - 1) / kChunk;
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }
  std::vector<Acc> parts(static_cast<std::size_t>(chunks));
  if (threads == 1 || chunks == 1) {
    for (int c = 0; c < chunks; ++c)
      parts[c] = work(c * kChunk, std::min(total, (c + 1) * kChunk));
  } else {
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1))
        parts[c] = work(c * kChunk, std::min(total, (c + 1) * kChunk));
    };
    std::vector<std::thread> pool;
    const int nw = std::min(threads, chunks);
    pool.reserve(static_cast<std::size_t>(nw));
    for (int t = 0; t < nw; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Acc total_acc{};
  for (const Acc& p : parts) total_acc += p;
  return total_acc;
}

struct FitAcc {
  long ok = 0;
  long failures = 0;
  double sum_dq = 0.0, sum_da = 0.0;
  double sum_dq2 = 0.0, sum_da2 = 0.0;
  double sum_seq = 0.0, sum_sea = 0.0;

  FitAcc& operator+=(const FitAcc& o) {
    ok += o.ok;
    failures += o.failures;
    sum_dq += o.sum_dq;
    sum_da += o.sum_da;
    sum_dq2 += o.sum_dq2;
    sum_da2 += o.sum_da2;
    sum_seq += o.sum_seq;
    sum_sea += o.sum_sea;
    return *this;
  }

  void add(double dq, double da, double seq, double sea) {
    ++ok;
    sum_dq += dq;
    sum_da += da;
    sum_dq2 += dq * dq;
    sum_da2 += da * da;
    sum_seq += seq;
    sum_sea += sea;
  }
};

struct BiasAcc {
  FitAcc mle;
  FitAcc em;
  BiasAcc& operator+=(const BiasAcc& o) {
    mle += o.mle;
    em += o.em;
    return *this;
  }
};

BiasCell finish_cell(double q, double alpha, int n, FitMethod method,
                     int replications, const FitAcc& acc) {
  BiasCell cell;
  cell.q = q;
  cell.alpha = alpha;
  cell.n = n;
  cell.method = method;
  cell.replications = replications;
  cell.failures = static_cast<int>(acc.failures);
  if (acc.ok > 0) {
    const double k = static_cast<double>(acc.ok);
    cell.bias_q = acc.sum_dq / k;
    cell.bias_alpha = acc.sum_da / k;
    cell.se_q = acc.sum_seq / k;
    cell.se_alpha = acc.sum_sea / k;
    cell.mse_q = acc.sum_dq2 / k;
    cell.mse_alpha = acc.sum_da2 / k;
  }
  return cell;
}

}  // namespace

BiasStudyResult run_bias_study(const BiasStudyConfig& config) {
  if (config.q_grid.empty() || config.alpha_grid.empty() || config.n_grid.empty())
    throw std::invalid_argument("bias study: empty grid");
  if (config.replications < 1)
    throw std::invalid_argument("bias study: replications must be >= 1");
  for (double q : config.q_grid)
    for (double a : config.alpha_grid) TgdParams{q, a}.validate();

  BiasStudyResult result;
  result.config = config;

  std::uint64_t cell_index = 0;
  for (double q0 : config.q_grid) {
    for (double a0 : config.alpha_grid) {
      for (int n : config.n_grid) {
        const TgdParams truth{q0, a0};
        const std::uint64_t cell = cell_index++;

        auto work = [&](int first, int last) {
          BiasAcc acc;
          for (int rep = first; rep < last; ++rep) {
            Rng rng(derive_seed(config.seed, cell,
                                static_cast<std::uint64_t>(rep)));
            const auto draws = sample(truth, static_cast<std::size_t>(n), rng);
            FreqTable data = FreqTable::from_samples(draws);

            if (config.with_mle) {
              // The study mirrors the paper's estimator: alpha is not
              // confined to [-1, 1], only to the region where the observed
              // likelihood stays defined.
              try {
                const detail::CoreFit fit = detail::study_mle(data);
                const InfoMatrix I = detail::info_raw(fit.q, fit.alpha, data);
                if (fit.converged && I.positive_definite()) {
                  const auto v = I.inverse();
                  acc.mle.add(fit.q - q0, fit.alpha - a0, std::sqrt(v[0]),
                              std::sqrt(v[2]));
                } else {
                  ++acc.mle.failures;
                }
              } catch (const std::exception&) {
                ++acc.mle.failures;
              }
            }
            if (config.with_em) {
              try {
                // generous cap: EM contracts slowly when the posterior is
                // nearly flat, and stopped-short fits would count as failures
                const EmResult em = em_fit(data, 1e-8, 5000, false);
                if (em.fit.converged && em.fit.se_q && em.fit.se_alpha) {
                  acc.em.add(em.fit.params.q - q0, em.fit.params.alpha - a0,
                             *em.fit.se_q, *em.fit.se_alpha);
                } else {
                  ++acc.em.failures;
                }
              } catch (const std::exception&) {
                ++acc.em.failures;
              }
            }
          }
          return acc;
        };

        const BiasAcc acc = run_chunked<BiasAcc>(config.replications,
                                                 config.threads, work);
        if (config.with_mle)
          result.cells.push_back(finish_cell(q0, a0, n, FitMethod::MLE,
                                             config.replications, acc.mle));
        if (config.with_em)
          result.cells.push_back(finish_cell(q0, a0, n, FitMethod::EM,
                                             config.replications, acc.em));
      }
    }
  }
  return result;
}

namespace {

struct PowerAcc {
  long ok = 0;
  long failures = 0;
  long rej_lrt = 0;
  long rej_score = 0;
  long rej_wald = 0;

  PowerAcc& operator+=(const PowerAcc& o) {
    ok += o.ok;
    failures += o.failures;
    rej_lrt += o.rej_lrt;
    rej_score += o.rej_score;
    rej_wald += o.rej_wald;
    return *this;
  }
};

}  // namespace

PowerStudyResult run_power_study(const PowerStudyConfig& config) {
  if (config.q_grid.empty() || config.alpha_grid.empty() || config.n_grid.empty())
    throw std::invalid_argument("power study: empty grid");
  if (!(config.level > 0.0 && config.level < 1.0))
    throw std::invalid_argument("power study: level must be in (0, 1)");
  for (double q : config.q_grid)
    for (double a : config.alpha_grid) TgdParams{q, a}.validate();

  PowerStudyResult result;
  result.config = config;

  std::uint64_t cell_index = 0;
  for (double q0 : config.q_grid) {
    for (double a0 : config.alpha_grid) {
      for (int n : config.n_grid) {
        const TgdParams truth{q0, a0};
        const std::uint64_t cell = cell_index++;

        auto work = [&](int first, int last) {
          PowerAcc acc;
          for (int rep = first; rep < last; ++rep) {
            Rng rng(derive_seed(config.seed, cell,
                                static_cast<std::uint64_t>(rep)));
            const auto draws = sample(truth, static_cast<std::size_t>(n), rng);
            FreqTable data = FreqTable::from_samples(draws);
            try {
              const FitResult alt = null_anchored_mle(data);
              const TestResult t_lrt = lrt(data, alt);
              const TestResult t_score = score_test(data, config.score_info);
              const TestResult t_wald = wald_test(data, alt);
              ++acc.ok;
              if (t_lrt.p_value < config.level) ++acc.rej_lrt;
              if (t_score.p_value < config.level) ++acc.rej_score;
              if (t_wald.p_value < config.level) ++acc.rej_wald;
            } catch (const std::exception&) {
              ++acc.failures;
            }
          }
          return acc;
        };

        const PowerAcc acc = run_chunked<PowerAcc>(config.replications,
                                                   config.threads, work);
        PowerCell cell_out;
        cell_out.q = q0;
        cell_out.alpha = a0;
        cell_out.n = n;
        cell_out.replications = config.replications;
        cell_out.failures = static_cast<int>(acc.failures);
        if (acc.ok > 0) {
          const double k = static_cast<double>(acc.ok);
          cell_out.power_lrt = static_cast<double>(acc.rej_lrt) / k;
          cell_out.power_score = static_cast<double>(acc.rej_score) / k;
          cell_out.power_wald = static_cast<double>(acc.rej_wald) / k;
        }
        result.cells.push_back(cell_out);
      }
    }
  }
  return result;
}

// ------------------------------------------------------------------- trends

namespace {

// verdict for a sequence expected to move in `direction` (-1 down, +1 up)
TrendLine judge(std::string family, std::string metric,
                const std::vector<double>& values, int direction, double slack) {
  TrendLine line;
  line.family = std::move(family);
  line.metric = std::move(metric);
  double worst = 0.0;
  double largest_move = 0.0;
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double step = values[i + 1] - values[i];
    largest_move = std::max(largest_move, std::abs(step));
    worst = std::max(worst, direction > 0 ? -step : step);
  }
  line.worst_step = worst;
  if (largest_move < 1e-12)
    line.verdict = "flat";
  else if (worst <= slack)
    line.verdict = direction > 0 ? "nondecreasing" : "nonincreasing";
  else
    line.verdict = "violation";
  return line;
}

std::string format_family(double q, double alpha) {
  std::ostringstream os;
  os << "q=" << q << " alpha=" << alpha;
  return os.str();
}

}  // namespace

bool TrendReport::all_ok() const {
  return std::none_of(lines.begin(), lines.end(), [](const TrendLine& l) {
    return l.verdict == "violation";
  });
}

TrendReport trend_report(const BiasStudyResult& result, double slack) {
  TrendReport report;
  report.slack = slack;
  const auto& cfg = result.config;
  if (cfg.n_grid.size() < 3) return report;

  for (double q0 : cfg.q_grid) {
    for (double a0 : cfg.alpha_grid) {
      for (FitMethod m : {FitMethod::MLE, FitMethod::EM}) {
        std::vector<double> abias_q, abias_a, se_q, se_a;
        for (int n : cfg.n_grid) {
          for (const BiasCell& c : result.cells) {
            if (c.q == q0 && c.alpha == a0 && c.n == n && c.method == m) {
              abias_q.push_back(std::abs(c.bias_q));
              abias_a.push_back(std::abs(c.bias_alpha));
              se_q.push_back(c.se_q);
              se_a.push_back(c.se_alpha);
            }
          }
        }
        if (abias_q.size() < 3) continue;
        const std::string fam = format_family(q0, a0) + " " + to_string(m);
        report.lines.push_back(judge(fam, "|bias_q| vs n", abias_q, -1, slack));
        report.lines.push_back(judge(fam, "|bias_alpha| vs n", abias_a, -1, slack));
        report.lines.push_back(judge(fam, "se_q vs n", se_q, -1, slack));
        report.lines.push_back(judge(fam, "se_alpha vs n", se_a, -1, slack));
      }
    }
  }
  return report;
}

TrendReport trend_report(const PowerStudyResult& result, double slack) {
  TrendReport report;
  report.slack = slack;
  const auto& cfg = result.config;

  auto power_of = [&](double q0, double a0, int n,
                      std::vector<double>* out) {
    for (const PowerCell& c : result.cells)
      if (c.q == q0 && c.alpha == a0 && c.n == n) {
        out->push_back(c.power_lrt);
        out->push_back(c.power_score);
        out->push_back(c.power_wald);
        return true;
      }
    return false;
  };

  static const char* kTests[3] = {"lrt", "score", "wald"};

  // power against n, per (q, alpha)
  if (cfg.n_grid.size() >= 3) {
    for (double q0 : cfg.q_grid) {
      for (double a0 : cfg.alpha_grid) {
        std::vector<double> rows;  // triplets per n
        for (int n : cfg.n_grid) power_of(q0, a0, n, &rows);
        if (rows.size() < 9) continue;
        for (int t = 0; t < 3; ++t) {
          std::vector<double> seq;
          for (std::size_t i = static_cast<std::size_t>(t); i < rows.size(); i += 3)
            seq.push_back(rows[i]);
          report.lines.push_back(judge(format_family(q0, a0),
                                       std::string(kTests[t]) + " power vs n",
                                       seq, +1, slack));
        }
      }
    }
  }

  // power against |alpha| along each sign, per (q, n)
  for (int sign : {-1, +1}) {
    std::vector<double> alphas;
    for (double a : cfg.alpha_grid)
      if ((sign < 0 && a < 0.0) || (sign > 0 && a > 0.0)) alphas.push_back(a);
    std::sort(alphas.begin(), alphas.end(),
              [](double x, double y) { return std::abs(x) < std::abs(y); });
    if (alphas.size() < 3) continue;
    for (double q0 : cfg.q_grid) {
      for (int n : cfg.n_grid) {
        std::vector<double> rows;
        bool complete = true;
        for (double a0 : alphas) complete = complete && power_of(q0, a0, n, &rows);
        if (!complete) continue;
        for (int t = 0; t < 3; ++t) {
          std::vector<double> seq;
          for (std::size_t i = static_cast<std::size_t>(t); i < rows.size(); i += 3)
            seq.push_back(rows[i]);
          std::ostringstream fam;
          fam << "q=" << q0 << " n=" << n << (sign < 0 ? " alpha<0" : " alpha>0");
          report.lines.push_back(judge(fam.str(),
                                       std::string(kTests[t]) + " power vs |alpha|",
                                       seq, +1, slack));
        }
      }
    }
  }
  return report;
}

}  // namespace tgd
