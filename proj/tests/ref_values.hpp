#pragma once

// Published reference values for arities 2..10, copied at their printed
// precision: dominant singular points and the limit constants for height,
// distinct leaf depths, last-level leaf count, width and total path length.
// Arrays are indexed by t - 2.

namespace refvals {

inline constexpr int kMinT = 2;
inline constexpr int kMaxT = 10;

inline constexpr double kQ0[] = {
    0.5573678720139932, 0.5206401166257250, 0.5090030531391631,
    0.5042116835293617, 0.5020339464245723, 0.5009982119507272,
    0.5004941016343997, 0.500245704703080,  0.5001224896234884,
};

// half an ulp of the last printed decimal digit plus conversion slop;
// the t=9 singular point carries one digit less than the others
inline double q0_slop(int t) { return t == 9 ? 6e-16 : 6e-17; }

inline constexpr double kMuH[] = {
    0.5517980333242771, 0.5330219170893142, 0.5216130806307567,
    0.5137644952434437, 0.5084950082062925, 0.5051047365215813,
    0.5030001253275540, 0.5017308605343554, 0.5009832278618640,
};

inline constexpr double kS2H[] = {
    0.3191028720021838, 0.2640876574238174, 0.2465933142213578,
    0.2404182939877220, 0.2396633993742431, 0.2411570855092153,
    0.2432575483836212, 0.2452173961787762, 0.2467757623911673,
};

inline constexpr double kMuD[] = {
    0.4151957394337730, 0.4869093777539261, 0.5024588321518999,
    0.5050331956677906, 0.5043408269340902, 0.5030838633817897,
    0.5020050053196332, 0.5012375070905982, 0.5007377066674932,
};

inline constexpr double kS2D[] = {
    0.2449371766120133, 0.2893609775712220, 0.2741197923680785,
    0.2607084483093273, 0.2530808413006747, 0.2495578056054622,
    0.2483362931739359, 0.2482103208441571, 0.2485046286268308,
};

inline constexpr double kMuM[] = {
    3.3008907135661046,  5.4223250580971105,  7.5391743055684431,
    9.6531072700455410,  11.7525465927985450, 13.8311837210749625,
    15.8889617566427750, 17.9291240142580452, 19.9558689242933884,
};

inline constexpr double kS2M[] = {
    3.4340283494347781,   10.9926467981432752,  23.0048877906448059,
    39.9382006717564049,  61.9509728363450114,  88.8290211521323761,
    120.2125697911546141, 155.7621950801096596, 195.2366537978909468,
};

inline constexpr double kMuW[] = {
    1.710776751014961,  0.7660531443158307, 0.4936068552417457,
    0.3650919029615249, 0.2902388863790219, 0.2411430286905858,
    0.2063933963643483, 0.1804647899046739, 0.1603561167643597,
};

inline constexpr double kMuTpl[] = {
    0.5517980333242771, 0.7995328756339714, 1.0432261612615134,
    1.2844112381086093, 1.5254850246188775, 1.7678665778255347,
    2.0120005013102160, 2.2577888724045994, 2.5049161393093200,
};

inline constexpr double kS2Tpl[] = {
    0.4254704960029117, 0.7922629722714524, 1.3151643425139087,
    2.0034857832310170, 2.8759607924909180, 3.9388990633171834,
    5.1894943655172528, 6.6208696968269586, 8.2258587463722461,
};

}  // namespace refvals
