#pragma once

// mpmath reference values, generated by make_refs.py

namespace refs {

struct GammaRecipRef { double x, value; };
inline const GammaRecipRef kGammaRecip[] = {
    {0.5, 0.56418958354775628695},
    {1.5, 1.1283791670955125739},
    {2.5, 0.75225277806367504926},
    {-0.5, -0.28209479177387814347},
    {-1.5, 0.42314218766081721521},
    {-2.75, -0.99552215802778674402},
    {7.2999999999999998224, 0.00078651990848892965322},
    {12.25, 1.3566402491712658414e-8},
    {29.5, 6.1169093573222791158e-31},
    {-29.5, 1.5351121119984074069e+31},
    {0.0010000000000000000208, 0.0010005765597449938948},
    {-0.0010000000000000000208, -0.00099942212849919618351},
    {3.0, 0.5},
};

struct Hyp2f1Ref { double a, b, c, z, value; };
inline const Hyp2f1Ref kHyp2f1[] = {
    {0.5, 1.5, 1.25, 0.2999999999999999889, 1.2418182451245833131},
    {2.5, -1.5, 1.5, 0.4500000000000000111, 0.074161984870956612271},
    {-0.5, 3.2000000000000001776, 0.5, 0.2000000000000000111, 0.24644637392211429142},
    {1.75, -0.75, 1.5, 0.69999999999999995559, 0.29452180607073701377},
    {4.2000000000000001776, -3.2000000000000001776, 1.5, 0.9000000000000000222, 0.025759571839025305467},
    {10.5, -9.5, 1.25, 0.94999999999999995559, 0.10994758869565208527},
    {0.2999999999999999889, 0.4000000000000000222, 1.8999999999999999112, 0.98999999999999999112, 1.1112416744262714396},
    {6.5, -5.5, 0.5, 0.99899999999999999911, 29.372386701059025428},
    {2.25, 1.5, 4.5, 0.80000000000000004441, 2.5847647217833264931},
};

struct LegendreRef { double mu, nu, theta, value; };
inline const LegendreRef kLegendre[] = {
    {-0.5, 0.5, 0.0010000000000000000208, 0.02523132311759118325},
    {-0.5, 0.5, 0.050000000000000002776, 0.17837524313710144427},
    {-0.5, 0.5, 0.69999999999999995559, 0.64040746201494917425},
    {-0.5, 0.5, 1.5, 0.79688457841125067978},
    {-0.5, 0.5, 2.3999999999999999112, 0.65575392964522617644},
    {-0.5, 0.5, 3.1000000000000000888, 0.16269932960272034565},
    {-0.5, 0.5, 3.1405926535897932384, 0.02523132311759118325},
    {-0.25, 3.25, 0.0010000000000000000208, 0.16497579379240371504},
    {-0.25, 3.25, 0.050000000000000002776, 0.43569479283622298607},
    {-0.25, 3.25, 0.69999999999999995559, 0.055282822415339436222},
    {-0.25, 3.25, 1.5, -0.077978668083246719921},
    {-0.25, 3.25, 2.3999999999999999112, 0.0023263873127162548137},
    {-0.25, 3.25, 3.1000000000000000888, -0.41697828009578416777},
    {-0.25, 3.25, 3.1405926535897932384, -0.16497579379240371504},
    {-0.5, 10.5, 0.0010000000000000000208, 0.025230818494122940071},
    {-0.5, 10.5, 0.050000000000000002776, 0.16958785558370746966},
    {-0.5, 10.5, 0.69999999999999995559, 0.089302155754559257776},
    {-0.5, 10.5, 1.5, -0.051694109206337563353},
    {-0.5, 10.5, 2.3999999999999999112, 0.084221830526969078458},
    {-0.5, 10.5, 3.1000000000000000888, 0.15712760125617917111},
    {-0.5, 10.5, 3.1405926535897932384, 0.025230818494122940071},
    {-1.5, 4.5, 0.0010000000000000000208, 8.4104219755452838374e-6},
    {-1.5, 4.5, 0.050000000000000002776, 0.0029561063445498028902},
    {-1.5, 4.5, 0.69999999999999995559, 0.035338239420602615938},
    {-1.5, 4.5, 1.5, -0.011095581494648721543},
    {-1.5, 4.5, 2.3999999999999999112, -0.029395660015878239175},
    {-1.5, 4.5, 3.1000000000000000888, -0.0022468655595066495252},
    {-1.5, 4.5, 3.1405926535897932384, -8.4104219755452838374e-6},
    {-2.25, 7.25, 0.0010000000000000000208, 1.4664490487720001342e-8},
    {-2.25, 7.25, 0.050000000000000002776, 0.000096416887390223151721},
    {-2.25, 7.25, 0.69999999999999995559, 0.00036262758203171994863},
    {-2.25, 7.25, 1.5, 0.0015147935938572405643},
    {-2.25, 7.25, 2.3999999999999999112, 0.0007417814633578700015},
    {-2.25, 7.25, 3.1000000000000000888, -0.000063934807574796405902},
    {-2.25, 7.25, 3.1405926535897932384, -1.4664490487720001342e-8},
    {0.0, 3.0, 0.0010000000000000000208, 0.99999700000212499937},
    {0.0, 3.0, 0.050000000000000002776, 0.99251327135813877084},
    {0.0, 3.0, 0.69999999999999995559, -0.028712995143227664812},
    {0.0, 3.0, 1.5, -0.10522092401884872495},
    {0.0, 3.0, 2.3999999999999999112, 0.10369692825469226169},
    {0.0, 3.0, 3.1000000000000000888, -0.99481650976035695114},
    {0.0, 3.0, 3.1405926535897932384, -0.99999700000212499937},
    {-0.9000000000000000222, 1.8999999999999999112, 0.0010000000000000000208, 0.0011117403732968031193},
    {-0.9000000000000000222, 1.8999999999999999112, 0.050000000000000002776, 0.037529319985828122955},
    {-0.9000000000000000222, 1.8999999999999999112, 0.69999999999999995559, 0.28688304016264941533},
    {-0.9000000000000000222, 1.8999999999999999112, 1.5, 0.039325222143858147409},
    {-0.9000000000000000222, 1.8999999999999999112, 2.3999999999999999112, -0.28863208353073909067},
    {-0.9000000000000000222, 1.8999999999999999112, 3.1000000000000000888, -0.031814870613849735077},
    {-0.9000000000000000222, 1.8999999999999999112, 3.1405926535897932384, -0.0011117403733204416658},
    {0.2999999999999999889, 2.7000000000000001776, 0.0010000000000000000208, 7.533802530420677172},
    {0.2999999999999999889, 2.7000000000000001776, 0.050000000000000002776, 2.3089422133096932286},
    {0.2999999999999999889, 2.7000000000000001776, 0.69999999999999995559, -0.25190285213276197469},
    {0.2999999999999999889, 2.7000000000000001776, 1.5, -0.14281857721411714075},
    {0.2999999999999999889, 2.7000000000000001776, 2.3999999999999999112, 0.34139296401218166301},
    {0.2999999999999999889, 2.7000000000000001776, 3.1000000000000000888, -2.4468440190210195506},
    {0.2999999999999999889, 2.7000000000000001776, 3.1405926535897932384, -7.5338025304206744566},
    {-2.5, 20.5, 0.0010000000000000000208, 1.6820357433416735304e-9},
    {-2.5, 20.5, 0.050000000000000002776, 0.000027479980745980872081},
    {-2.5, 20.5, 0.69999999999999995559, -0.000080908397089412251281},
    {-2.5, 20.5, 1.5, -8.1907713253957210012e-6},
    {-2.5, 20.5, 2.3999999999999999112, 2.3141287929740309282e-6},
    {-2.5, 20.5, 3.1000000000000000888, 0.000017772570997499524543},
    {-2.5, 20.5, 3.1405926535897932384, 1.6820357433416735304e-9},
    {-0.5, 40.5, 0.0010000000000000000208, 0.025224258940064312142},
    {-0.5, 40.5, 0.050000000000000002776, 0.077243633632135175843},
    {-0.5, 40.5, 0.69999999999999995559, -0.010011836327693402687},
    {-0.5, 40.5, 1.5, -0.018931423240524316732},
    {-0.5, 40.5, 2.3999999999999999112, -0.020059663798342043902},
    {-0.5, 40.5, 3.1000000000000000888, 0.094573662594336007221},
    {-0.5, 40.5, 3.1405926535897932384, 0.025224258940064312142},
    {-1.25, 60.25, 0.0010000000000000000208, 0.000065963450756707139595},
    {-1.25, 60.25, 0.050000000000000002776, 0.0024536786101520876671},
    {-1.25, 60.25, 0.69999999999999995559, -0.00037312218127299289691},
    {-1.25, 60.25, 1.5, 0.00055378972053305035522},
    {-1.25, 60.25, 2.3999999999999999112, 0.000071034558536813048067},
    {-1.25, 60.25, 3.1000000000000000888, -0.0030996338544111945954},
    {-1.25, 60.25, 3.1405926535897932384, -0.000065963450756707139595},
};

struct LegendreDRef { double mu, nu, theta, value; };
inline const LegendreDRef kLegendreD[] = {
    {-0.5, 1.5, 0.2000000000000000111, 0.78906365739401236875},
    {-0.5, 1.5, 1.1000000000000000888, -0.58433900550338352324},
    {-0.5, 1.5, 2.8999999999999999112, 0.675556218958501092},
    {-1.5, 3.5, 0.2000000000000000111, 0.15501362747422533803},
    {-1.5, 3.5, 1.1000000000000000888, -0.20908133779669620353},
    {-1.5, 3.5, 2.8999999999999999112, -0.15910148502668392237},
    {-0.25, 6.25, 0.2000000000000000111, -1.3070342358039103814},
    {-0.25, 6.25, 1.1000000000000000888, 0.0079798132498861934971},
    {-0.25, 6.25, 2.8999999999999999112, 1.731792782194148524},
    {-2.5, 2.5, 0.2000000000000000111, 0.011540925395406804846},
    {-2.5, 2.5, 1.1000000000000000888, 0.050748859917280733755},
    {-2.5, 2.5, 2.8999999999999999112, -0.015110033338382687601},
};

struct BasisNormSqRef { double n, m, value; };
inline const BasisNormSqRef kBasisNormSq[] = {
    {-0.5, 0.0, 3.1415926535897932385},
    {-0.5, 1.0, 1.0},
    {-0.5, 2.0, 1.0},
    {-0.5, 5.0, 1.0},
    {-0.5, 20.0, 1.0},
    {0.0, 0.0, 2.0},
    {0.0, 1.0, 0.66666666666666666667},
    {0.0, 2.0, 0.4},
    {0.0, 5.0, 0.18181818181818181818},
    {0.0, 20.0, 0.04878048780487804878},
    {0.25, 0.0, 1.7480383695280798736},
    {0.25, 1.0, 0.42985873032210002815},
    {0.25, 2.0, 0.21883717180034183251},
    {0.25, 5.0, 0.07249264490280474783},
    {0.25, 20.0, 0.010579303921888245884},
    {0.5, 0.0, 1.5707963267948966192},
    {0.5, 1.0, 0.25},
    {0.5, 2.0, 0.11111111111111111111},
    {0.5, 5.0, 0.027777777777777777778},
    {0.5, 20.0, 0.0022675736961451247166},
    {0.9000000000000000222, 0.0, 1.3723455340252824407},
    {0.9000000000000000222, 1.0, 0.088762506120273996437},
    {0.9000000000000000222, 2.0, 0.032976782459544518504},
    {0.9000000000000000222, 5.0, 0.0055523946759739557234},
    {0.9000000000000000222, 20.0, 0.00018836524583676880191},
};

struct StdSurfaceRef { double n, focal_integral, r1_pi, gamma0, gamma1, gamma2; };
inline const StdSurfaceRef kStdSurface[] = {
    {0.25, 1.1780972450961724644, 0.55890486225480862322, 0.67395388203877061668, 0.12712963806063704952, -0.83239643968274258617},
    {0.5, 1.1780972450961724644, 0.55890486225480862322, 0.75, 0.18799712059732503768, -0.93998560298662518841},
};

struct Gamma1ConstantRef { double n, value; };
inline const Gamma1ConstantRef kGamma1Constant[] = {
    {0.0, 0.66666666666666666667},
    {0.25, 0.46334484351428116762},
    {0.5, 0.3133285343288750628},
};

}  // namespace refs
