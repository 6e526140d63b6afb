#include "rbt/env.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>

#include "rbt/metrics.hpp"

namespace rbt {
namespace {

Action sample_from(const ActionDistribution& dist, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double acc = 0.0;
  int last = -1;
  for (int c = 0; c < kNumActions; ++c) {
    if (dist[c] <= 0.0) continue;
    acc += dist[c];
    last = c;
    if (u < acc) return Action(c);
  }
  // u landed in the rounding gap above the accumulated mass.
  return Action(last);
}

}  // namespace

const char* to_string(PolicyKind kind) noexcept {
  switch (kind) {
    case PolicyKind::Mixture:
      return "mixture";
    case PolicyKind::MaxBelief:
      return "maxbelief";
    case PolicyKind::UniformRandomBaseline:
      return "random";
  }
  return "?";
}

PolicyKind parse_policy(std::string_view text) {
  if (text == "mixture") return PolicyKind::Mixture;
  if (text == "maxbelief") return PolicyKind::MaxBelief;
  if (text == "random") return PolicyKind::UniformRandomBaseline;
  throw std::invalid_argument("unknown policy '" + std::string(text) +
                              "' (expected mixture, maxbelief or random)");
}

const char* to_string(Outcome outcome) noexcept {
  switch (outcome) {
    case Outcome::Win:
      return "win";
    case Outcome::Loss:
      return "loss";
    case Outcome::Draw:
      return "draw";
    case Outcome::InvalidMove:
      return "invalid_move";
  }
  return "?";
}

Outcome parse_outcome(std::string_view text) {
  if (text == "win") return Outcome::Win;
  if (text == "loss") return Outcome::Loss;
  if (text == "draw") return Outcome::Draw;
  if (text == "invalid_move") return Outcome::InvalidMove;
  throw std::invalid_argument("unknown outcome '" + std::string(text) + "'");
}

WindowPlacement sample_window(WindowShape shape, Rng& rng) {
  std::uniform_int_distribution<int> top(0, kBoardSide - shape.height);
  std::uniform_int_distribution<int> left(0, kBoardSide - shape.width);
  const int r = top(rng);
  const int c = left(rng);
  return WindowPlacement{r, c, shape};
}

EpisodeResult run_episode(const EpisodeConfig& config, const QTable& q) {
  Rng rng(config.seed);
  BoardState truth;
  Belief belief = initial_belief();
  EpisodeResult result;

  for (int t = 0;; ++t) {
    StepRecord step;
    step.t = t;
    step.true_state = encode_state(truth);
    step.observation = make_observation(truth, sample_window(config.shape, rng));
    if (t > 0) {
      belief = predict(belief, result.steps.back().chosen_action,
                       config.belief_opponent_model);
    }
    belief = update(belief, step.observation);
    step.belief = belief;

    step.mixture_values = mixture_values(belief, q);
    step.a_mix = argmax_set(step.mixture_values);
    step.a_max = argmax_set(alt_values(belief, q));
    step.iou = iou(step.a_mix, step.a_max);
    step.margin = value_margin(step.mixture_values, step.a_mix, step.a_max);

    switch (config.policy) {
      case PolicyKind::Mixture:
        step.chosen_action = sample_uniform(step.a_mix, rng);
        break;
      case PolicyKind::MaxBelief:
        step.chosen_action = sample_uniform(step.a_max, rng);
        break;
      case PolicyKind::UniformRandomBaseline:
        step.chosen_action = sample_uniform(ActionSet::all(), rng);
        break;
    }

    auto finish = [&](double reward, Outcome outcome) {
      step.reward = reward;
      result.steps.push_back(std::move(step));
      result.episode_return = reward;
      result.outcome = outcome;
      return result;
    };

    if (truth.at(step.chosen_action.cell()) != Cell::Empty) {
      return finish(-1.0, Outcome::InvalidMove);
    }
    truth = apply_action(truth, step.chosen_action, Cell::X);
    switch (status(truth)) {
      case GameStatus::XWins:
        return finish(1.0, Outcome::Win);
      case GameStatus::Draw:
        return finish(0.0, Outcome::Draw);
      default:
        break;
    }

    truth = apply_action(truth, sample_from(config.opponent.distribution(truth), rng), Cell::O);
    switch (status(truth)) {
      case GameStatus::OWins:
        return finish(-1.0, Outcome::Loss);
      case GameStatus::Draw:
        return finish(0.0, Outcome::Draw);
      default:
        break;
    }
    result.steps.push_back(std::move(step));
  }
}

std::vector<EpisodeResult> run_episodes(const EpisodeConfig& config, const QTable& q,
                                        std::size_t episodes, unsigned jobs) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(episodes, 1)));

  std::vector<EpisodeResult> results(episodes);
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < episodes; i += jobs) {
      EpisodeConfig c = config;
      c.seed = config.seed + i;
      results[i] = run_episode(c, q);
    }
  };

  if (jobs == 1) {
    work(0);
    return results;
  }
  std::vector<std::exception_ptr> errors(jobs);
  {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace rbt
