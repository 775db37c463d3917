#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "abelkernel/cli/cli.hpp"

namespace abelkernel::cli {

std::string trace_csv(const AbelResult& r)
{
    std::ostringstream os;
    os << std::setprecision(17);
    os << "s,re_g,im_g,extrapolant_re,extrapolant_im,est_error\n";
    const auto& t = r.extrapolation_table;
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        os << r.samples[i].s << "," << r.samples[i].g.real() << "," << r.samples[i].g.imag() << ",";
        if (i < t.size()) {
            os << t[i][i].real() << "," << t[i][i].imag() << ",";
            if (i > 0)
                os << std::abs(t[i][i] - t[i - 1][i - 1]);
        } else {
            os << ",,";
        }
        os << "\n";
    }
    return os.str();
}

std::vector<std::filesystem::path> emit_trace(const Report& report, const std::filesystem::path& dir,
                                              std::ostream& warnings)
{
    std::vector<std::filesystem::path> written;
    if (report.traces.empty()) {
        warnings << "warning: report contains no traces; nothing written\n";
        return written;
    }
    std::filesystem::create_directories(dir);
    for (const auto& t : report.traces) {
        const auto path = dir / ("trace_" + t.name + ".csv");
        std::ofstream out(path);
        if (!out)
            throw std::runtime_error("cannot write " + path.string());
        out << trace_csv(t.result);
        if (!out)
            throw std::runtime_error("write failed for " + path.string());
        written.push_back(path);
    }
    return written;
}

} // namespace abelkernel::cli
