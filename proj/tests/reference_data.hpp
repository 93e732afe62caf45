#pragma once

// The bundled reference example: a 9-criterion x 9-alternative investment
// ranking problem. kPrinted* arrays hold the two/three-decimal values the
// reference publication prints; kComputed* arrays hold the full-precision
// values of the pipeline evaluated from the printed inputs (frozen from an
// independent step-by-step evaluation, cross-checked in 50-digit decimal
// arithmetic).

#include <array>
#include <string>
#include <vector>

namespace refdata {

inline constexpr int kC = 9;
inline constexpr int kR = 9;

inline const std::array<std::string, kR> kAltIds = {"A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9"};
inline const std::array<std::string, kC> kCritIds = {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9"};

// true = maximize; only C3 is minimized
inline constexpr std::array<bool, kC> kMaximize = {true, true, false, true, true, true, true, true, true};

inline constexpr std::array<double, kC> kWeights = {0.013, 0.016, 0.018, 0.043, 0.048, 0.096, 0.007, 0.750, 0.009};

inline constexpr double kValues[kC][kR] = {
    {2.00, 7.00, 1.00, 9.00, 2.00, 7.00, 6.00, 4.00, 9.00},
    {0.00, 0.00, 0.00, 2.00, 1.00, 1.00, 5.00, 0.00, 0.00},
    {0.00, 0.00, 0.00, 1.00, 0.00, 0.00, 0.00, 0.00, 0.00},
    {2.00, 1.00, 1.00, 1.00, 2.00, 1.00, 1.00, 3.00, 1.00},
    {0.45, 0.55, 0.64, 0.60, 0.65, 0.52, 0.58, 0.53, 0.60},
    {0.42, 0.47, 0.41, 0.62, 0.51, 0.47, 0.48, 0.62, 0.52},
    {0.35, 0.80, 0.58, 0.54, 0.54, 0.88, 0.63, 0.39, 0.66},
    {383.00, 11246.00, 216.00, 1335.00, 142.00, 22665.00, 796.00, 302.00, 1249.00},
    {14.00, 13.00, 14.00, 10.00, 15.00, 14.00, 13.00, 12.00, 13.00},
};

// deviation matrix as printed (two decimals)
inline constexpr double kPrintedSpc[kC][kR] = {
    {7, 2, 8, 0, 7, 2, 3, 5, 0},
    {5, 5, 5, 3, 4, 4, 0, 5, 5},
    {0, 0, 0, 1, 0, 0, 0, 0, 0},
    {1, 2, 2, 2, 1, 2, 2, 0, 2},
    {0.20, 0.10, 0.01, 0.05, 0.00, 0.14, 0.07, 0.12, 0.05},
    {0.20, 0.16, 0.21, 0.00, 0.11, 0.15, 0.15, 0.00, 0.10},
    {0.53, 0.08, 0.30, 0.34, 0.34, 0.00, 0.25, 0.48, 0.22},
    {22282, 11419, 22449, 21330, 22523, 0, 21869, 22363, 21416},
    {1, 2, 1, 5, 0, 1, 2, 3, 2},
};

// log-conversion matrix as printed (two decimals)
inline constexpr double kPrintedLc[kC][kR] = {
    {0.46, 0.72, 0.43, 1.44, 0.46, 0.72, 0.62, 0.51, 1.44},
    {0.51, 0.51, 0.51, 0.62, 0.56, 0.56, 1.44, 0.51, 0.51},
    {1.44, 1.44, 1.44, 0.91, 1.44, 1.44, 1.44, 1.44, 1.44},
    {0.91, 0.72, 0.72, 0.72, 0.91, 0.72, 0.72, 1.44, 0.72},
    {1.26, 1.35, 1.43, 1.40, 1.44, 1.32, 1.37, 1.33, 1.39},
    {1.27, 1.30, 1.26, 1.44, 1.34, 1.31, 1.31, 1.44, 1.35},
    {1.08, 1.36, 1.20, 1.18, 1.18, 1.44, 1.23, 1.10, 1.25},
    {0.10, 0.11, 0.10, 0.10, 0.10, 1.44, 0.10, 0.10, 0.10},
    {0.91, 0.72, 0.91, 0.51, 1.44, 0.91, 0.72, 0.62, 0.72},
};

// weighted matrix as printed (three decimals)
inline constexpr double kPrintedWlc[kC][kR] = {
    {0.006, 0.010, 0.006, 0.019, 0.006, 0.010, 0.008, 0.007, 0.019},
    {0.008, 0.008, 0.008, 0.010, 0.009, 0.009, 0.024, 0.008, 0.008},
    {0.026, 0.026, 0.026, 0.016, 0.026, 0.026, 0.026, 0.026, 0.026},
    {0.039, 0.031, 0.031, 0.031, 0.039, 0.031, 0.031, 0.062, 0.031},
    {0.060, 0.064, 0.068, 0.066, 0.069, 0.063, 0.065, 0.063, 0.066},
    {0.122, 0.125, 0.121, 0.139, 0.129, 0.126, 0.126, 0.139, 0.130},
    {0.007, 0.009, 0.008, 0.008, 0.008, 0.009, 0.008, 0.007, 0.008},
    {0.075, 0.080, 0.075, 0.075, 0.075, 1.082, 0.075, 0.075, 0.075},
    {0.008, 0.006, 0.008, 0.004, 0.013, 0.008, 0.006, 0.005, 0.006},
};

inline constexpr std::array<double, kC> kPrintedBeta = {0.019, 0.024, 0.026, 0.062, 0.069,
                                                        0.139, 0.009, 1.082, 0.013};
inline constexpr double kPrintedBetaS = 1.443;

inline constexpr std::array<double, kR> kPrintedAlpha = {0.352, 0.360, 0.351, 0.370, 0.373,
                                                         1.364, 0.370, 0.393, 0.371};
inline constexpr std::array<double, kR> kPrintedTheta = {0.244, 0.249, 0.244, 0.256, 0.258,
                                                         0.945, 0.256, 0.272, 0.257};
inline constexpr std::array<int, kR> kPrintedRank = {8, 7, 9, 6, 3, 1, 5, 2, 4};

// full-precision pipeline values from the printed inputs (frozen oracle output)
inline constexpr std::array<double, kC> kComputedBeta = {
    0.018755035531556524, 0.023083120654223414, 0.02596851073600134,
    0.06203588675822542,  0.06924936196267024,  0.1384987239253405,
    0.010098865286222744, 1.0820212806667224,   0.01298425536800067};
inline constexpr double kComputedBetaS = 1.4426950408889632;
inline constexpr std::array<double, kR> kComputedAlpha = {
    0.3525292340474521, 0.36101770501847796, 0.3521232307203042,
    0.3695646182112051, 0.3738228528711492,  1.3645013600783427,
    0.3704812520078462, 0.3934364162937597,  0.3707022965715716};
inline constexpr std::array<double, kR> kComputedTheta = {
    0.24435464464494855, 0.25023840436578004, 0.24407322458343803,
    0.2561626731478095,  0.2591142564965124,  0.9458002706085141,
    0.25679803527955725, 0.2727093426836285,  0.25695125169568156};
inline constexpr double kComputedDistanceA6 = 0.0781936808106205;

// best-first alternative order at full precision (agrees with the printed ranks)
inline constexpr std::array<int, kR> kOrder = {5, 7, 4, 8, 6, 3, 1, 0, 2};  // A6 A8 A5 A9 A7 A4 A2 A1 A3

inline std::vector<std::vector<double>> values_vector() {
    std::vector<std::vector<double>> v(kC, std::vector<double>(kR));
    for (int i = 0; i < kC; ++i)
        for (int j = 0; j < kR; ++j) v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = kValues[i][j];
    return v;
}

}  // namespace refdata
