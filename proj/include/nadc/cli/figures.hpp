#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nadc/coeffs.hpp"
#include "nadc/gaussian.hpp"

namespace nadc::cli {

enum class FigureKind { PhotonNumber, PhaseEvolution };

/// Parameter preset for one published plot. Every input mode starts in the
/// same coherent state `alpha`; coupling is restricted.
struct FigurePreset {
    std::string id;
    std::string caption;
    FigureKind kind = FigureKind::PhotonNumber;
    ModeId mode = ModeId::Signal;
    double lambda1 = 1.0;
    Complex alpha{};
    double t = 0.0;  // PhotonNumber
    double t_start = 0.0;  // PhaseEvolution
    double t_stop = 0.0;
    int t_count = 1;
    int theta_points = 721;
    bool poisson_reference = false;

    [[nodiscard]] CouplerParams params() const;
    [[nodiscard]] std::vector<double> times() const;
};

const std::vector<FigurePreset>& figure_registry();

/// Throws std::out_of_range for unknown ids.
const FigurePreset& find_figure(std::string_view id);

}  // namespace nadc::cli
