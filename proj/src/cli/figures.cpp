#include "nadc/cli/figures.hpp"

#include <numbers>
#include <stdexcept>

namespace nadc::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// 0..6 in steps of 0.1 spans one decoupling period (6.05) at lambda1 = 0.6.
constexpr double kPhaseTStop = 6.0;
constexpr int kPhaseTCount = 61;

std::vector<FigurePreset> build_registry() {
    std::vector<FigurePreset> r;

    // Signal-mode photon statistics against a Poisson reference of equal mean.
    FigurePreset fig2;
    fig2.id = "2";
    fig2.caption =
        "signal-mode P(n), alpha_j = 3 exp(i pi/3), lambda1 = 0.3, t = 1.5, with Poisson reference";
    fig2.kind = FigureKind::PhotonNumber;
    fig2.mode = ModeId::Signal;
    fig2.lambda1 = 0.3;
    fig2.alpha = std::polar(3.0, kPi / 3.0);
    fig2.t = 1.5;
    fig2.poisson_reference = true;
    r.push_back(fig2);

    // Linear-mode photon statistics at the first decoupling time and at t = 5.
    FigurePreset fig3a;
    fig3a.id = "3a";
    fig3a.caption = "linear-mode P(n), alpha_j = 0.5 exp(i pi/3), lambda1 = 1, t = t_s";
    fig3a.kind = FigureKind::PhotonNumber;
    fig3a.mode = ModeId::Linear;
    fig3a.lambda1 = 1.0;
    fig3a.alpha = std::polar(0.5, kPi / 3.0);
    fig3a.t = squeeze_times(1.0, 1).t_s;
    fig3a.poisson_reference = true;
    r.push_back(fig3a);

    FigurePreset fig3b = fig3a;
    fig3b.id = "3b";
    fig3b.caption = "linear-mode P(n), alpha_j = 0.5 exp(i pi/3), lambda1 = 1, t = 5";
    fig3b.t = 5.0;
    r.push_back(fig3b);

    // Signal-mode phase distribution over a (Theta, t) grid, vacuum and unit inputs.
    FigurePreset fig4a;
    fig4a.id = "4a";
    fig4a.caption = "signal-mode P(Theta, t), lambda1 = 0.6, alpha_j = 0";
    fig4a.kind = FigureKind::PhaseEvolution;
    fig4a.mode = ModeId::Signal;
    fig4a.lambda1 = 0.6;
    fig4a.alpha = 0.0;
    fig4a.t_start = 0.0;
    fig4a.t_stop = kPhaseTStop;
    fig4a.t_count = kPhaseTCount;
    r.push_back(fig4a);

    FigurePreset fig4b = fig4a;
    fig4b.id = "4b";
    fig4b.caption = "signal-mode P(Theta, t), lambda1 = 0.6, alpha_j = 1";
    fig4b.alpha = 1.0;
    r.push_back(fig4b);

    // The same two runs for the linear mode.
    FigurePreset fig5a = fig4a;
    fig5a.id = "5a";
    fig5a.caption = "linear-mode P(Theta, t), lambda1 = 0.6, alpha_j = 0";
    fig5a.mode = ModeId::Linear;
    r.push_back(fig5a);

    FigurePreset fig5b = fig4b;
    fig5b.id = "5b";
    fig5b.caption = "linear-mode P(Theta, t), lambda1 = 0.6, alpha_j = 1";
    fig5b.mode = ModeId::Linear;
    r.push_back(fig5b);

    return r;
}

}  // namespace

CouplerParams FigurePreset::params() const {
    return CouplerParams::restricted_uniform(lambda1, alpha);
}

std::vector<double> FigurePreset::times() const {
    if (kind == FigureKind::PhotonNumber || t_count <= 1) return {t};
    std::vector<double> out(static_cast<std::size_t>(t_count));
    const double step = (t_stop - t_start) / (t_count - 1);
    for (int i = 0; i < t_count; ++i) out[static_cast<std::size_t>(i)] = t_start + step * i;
    out.back() = t_stop;
    return out;
}

const std::vector<FigurePreset>& figure_registry() {
    static const std::vector<FigurePreset> registry = build_registry();
    return registry;
}

const FigurePreset& find_figure(std::string_view id) {
    for (const auto& f : figure_registry()) {
        if (f.id == id) return f;
    }
    throw std::out_of_range("unknown figure '" + std::string(id) + "' (expected 2, 3a, 3b, 4a, 4b, 5a, 5b)");
}

}  // namespace nadc::cli
