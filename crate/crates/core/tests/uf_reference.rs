//! UF values against an independent transcription, frozen at random points
//! inside each box (n = 10 and 15, two points each).

use std::f64::consts::PI;

use dfmoint_core::suite::Uf;

#[rustfmt::skip]
const CASES: &[(u8, &[f64], &[f64])] = &[
    (1, &[0.272215, 0.786753, 0.319317, 0.992339, -0.172946, 0.43426, -0.317116, 0.632505, 0.237473, -0.689847], &[1.5656176868278537, 2.5542959259924842]),
    (1, &[0.210164, -0.66875, 0.366164, -0.881958, 0.055534, 0.677007, -0.0146, 0.88008, 0.982392, -0.013317], &[1.5204934524605278, 1.4794031477603333]),
    (1, &[0.922899, -0.859308, 0.006291, 0.865134, -0.149094, -0.787199, 0.849173, -0.674718, 0.115493, 0.538593, -0.873432, -0.918378, 0.361932, 0.925381, -0.150201], &[2.551539509878033, 1.881462266677946]),
    (1, &[0.521442, -0.37489, 0.266436, 0.639274, 0.761973, 0.476347, 0.195381, -0.389654, -0.572849, 0.550364, 0.454552, 0.751705, -0.966247, -0.414547, 0.033683], &[2.6648384981991406, 2.473656224011497]),
    (2, &[0.489744, -0.872596, -0.995518, 0.029253, 0.427026, 0.076649, -0.303007, 0.446859, 0.845093, -0.194209], &[1.2367131054132872, 0.7840184235171787]),
    (2, &[0.440346, 0.799554, 0.15077, -0.058284, 0.385475, 0.10342, 0.409835, 0.724791, -0.860305, 0.077886], &[1.274863879697286, 1.0077036157193255]),
    (2, &[0.206919, 0.982364, 0.219342, 0.19007, 0.278048, 0.125169, -0.505601, -0.465894, 0.070767, -0.583821, 0.362702, 0.134436, -0.456745, 0.292749, 0.106346], &[0.44574349637691146, 1.0841830589663148]),
    (2, &[0.998166, 0.052266, 0.716293, 0.109275, -0.42366, -0.902428, 0.534057, -0.33138, -0.849876, 0.050918, 0.187357, -0.128052, 0.953675, 0.740048, 0.994402], &[2.9766858462418604, 1.2511937162414803]),
    (3, &[0.234479, 0.542672, 0.267509, 0.141122, 0.486532, 0.72556, 0.754942, 0.888188, 0.478285, 0.477155], &[2.605884217230369, 3.140683700732022]),
    (3, &[0.047015, 0.058009, 0.311282, 0.172218, 0.866332, 0.418148, 0.719716, 0.357844, 0.887579, 0.537444], &[4.939139326608277, 2.5559874141098087]),
    (3, &[0.486236, 0.246405, 0.015476, 0.677327, 0.514862, 0.2708, 0.016874, 0.516184, 0.664965, 0.72378, 0.316598, 0.371508, 0.402166, 0.680257, 0.299358], &[1.8722384453387333, 1.5368578074743946]),
    (3, &[0.122317, 0.518092, 0.006279, 0.345543, 0.464866, 0.128281, 0.343699, 0.904675, 0.326808, 0.068913, 0.149254, 0.515313, 0.479036, 0.989713, 0.461444], &[1.4956155501677786, 3.4562514175612646]),
    (4, &[0.622788, 0.478306, -0.137324, -1.044028, -1.367529, -1.131414, -1.292019, -1.074525, -0.347316, 1.539214], &[0.7461769038853583, 0.7786148699454345]),
    (4, &[0.619522, 0.23175, 0.212406, 0.053763, -1.636416, 0.960563, -0.874886, -0.800325, 1.427184, -1.48971], &[0.754595816814472, 0.7628161405555182]),
    (4, &[0.799428, -1.050311, 0.367961, 1.478639, -1.730167, -0.394476, 1.947258, -1.569325, 1.161166, 1.4706, -0.788277, -0.626408, -0.370937, 0.984513, -1.661739], &[0.9643336981384407, 0.5167639584580047]),
    (4, &[0.619959, 1.874003, 1.81093, 1.043784, -0.270727, 1.835779, 0.866959, -0.180006, 1.657859, -1.335878, -1.518618, -1.896517, 1.253901, -1.71268, -1.705731], &[0.7749673267243714, 0.7248883272480683]),
    (5, &[0.083411, 0.939907, 0.894763, 0.664967, -0.631291, 0.802597, 0.292549, -0.057035, 0.649351, -0.609484], &[6.256740736365007, 5.112726358182793]),
    (5, &[0.772341, 0.317593, 0.376582, -0.249981, -0.131569, 0.721339, -0.854593, 0.336735, -0.277184, -0.019853], &[4.248280447644128, 6.436272975208925]),
    (5, &[0.864119, -0.029852, -0.68901, 0.802483, -0.435499, -0.087108, -0.423801, -0.973596, 0.692573, -0.327737, -0.279211, 0.208653, -0.58326, 0.92015, 0.173525], &[4.735345554994582, 5.883245584787279]),
    (5, &[0.357564, -0.26381, -0.530554, -0.153256, -0.174184, 0.870548, -0.438846, -0.435617, -0.234763, 0.350642, 0.595029, -0.847188, 0.770902, 0.424255, -0.363468], &[6.460624929254846, 5.9092256061754505]),
    (6, &[0.252592, 0.915517, -0.182092, 0.223756, 0.402802, 0.549949, -0.912066, 0.902861, -0.603946, 0.185932], &[11.462299070374462, 7.627573371854446]),
    (6, &[0.825364, 0.46219, -0.534646, 0.515751, -0.592199, -0.077161, -0.325048, -0.91718, -0.189705, -0.839056], &[2.904982207795771, 7.668911736598499]),
    (6, &[0.822638, 0.733277, -0.853286, -0.53177, -0.71107, -0.508869, 0.701506, -0.923197, -0.410083, -0.523992, 0.387529, 0.908273, -0.036665, 0.789653, -0.676091], &[7.518353478122808, 6.8563420622915]),
    (6, &[0.164337, 0.380805, -0.417621, -0.541132, 0.573704, 0.168896, -0.760168, 0.612201, -0.709562, -0.75635, -0.571567, 0.362623, -0.951396, 0.175068, -0.76945], &[4.747200919477125, 8.38362603778783]),
    (7, &[0.707912, -0.826034, -0.56762, 0.367937, 0.09172, 0.870272, -0.641003, 0.329388, -0.159121, 0.784948], &[2.7030737754709553, 2.533827282093724]),
    (7, &[0.606955, -0.539697, -0.153893, -0.892082, 0.80358, 0.175483, 0.624836, -0.21159, 0.608815, -0.427511], &[1.0803535161851117, 1.899003372571224]),
    (7, &[0.307082, -0.240391, -0.165624, -0.475999, -0.326757, 0.37615, -0.725157, 0.665254, -0.021018, -0.458721, -0.059501, 0.158894, -0.239543, 0.850414, 0.332812], &[2.6113512792794933, 1.2309260042923946]),
    (7, &[0.329394, 0.857076, 0.696647, 0.636456, 0.190669, 0.657962, 0.271562, -0.231268, -0.00445, 0.440583, 0.186551, 0.287465, -0.808834, -0.223849, 0.64641], &[2.0093487407679382, 0.9000997484760743]),
    (8, &[0.303261, 0.633, -0.209221, -1.568918, -1.93779, -1.151381, 1.936311, 0.80225, 0.713865, -1.975365], &[8.37939331194412, 7.117893126905722, 3.391579041607289]),
    (8, &[0.002151, 0.967674, 1.665506, -0.116106, 0.663871, 1.708413, -1.860186, 0.151916, -1.213759, -0.326181], &[10.43786622201003, 3.5449553317805083, 2.1470253399899377]),
    (8, &[0.664081, 0.853205, 0.146742, -0.963419, 1.947145, -0.90526, 1.591273, 1.465208, 1.231722, -1.23012, 1.312743, 0.472476, 0.124851, -0.431443, -1.496112], &[4.850192442737006, 10.686049709896768, 6.847041381870175]),
    (8, &[0.014197, 0.743823, -0.93323, 1.861356, -1.560989, -0.264437, 0.032435, -1.963658, -1.460247, -1.26184, 0.876289, 0.647916, -0.347274, -1.281248, 1.39702], &[5.0913040406140615, 12.089824670359926, 6.800941003364174]),
    (9, &[0.016502, 0.409826, -1.962718, -1.358588, -0.212807, -1.060186, -0.936375, 1.293507, -1.366067, -0.64428], &[4.919792998602558, 2.2395594342085805, 9.108347752238304]),
    (9, &[0.111389, 0.098894, 0.485388, -0.63179, 0.650993, 0.883601, 0.298982, -0.668406, 0.312281, -0.05121], &[0.4999099217546866, 0.7656412702998513, 1.4607770459799598]),
    (9, &[0.942975, 0.529227, 1.979455, 0.647861, 0.436737, -1.524168, 0.697494, -0.43189, -1.56766, -1.280653, -1.118356, 0.882638, -0.945162, 0.977227, 0.080389], &[4.668678930123108, 3.4140564347358073, 6.626214109119279]),
    (9, &[0.513935, 0.440637, -1.812837, -0.663762, -0.984659, -1.315571, -0.528309, 1.639861, -0.034568, 1.976207, 1.535421, 0.482094, -0.954484, -1.776668, -0.463894], &[4.39358486749316, 7.285751155373762, 1.960939473666884]),
    (10, &[0.330885, 0.912756, 1.497803, 0.09247, 1.822802, -0.384562, 0.418721, -1.039659, 0.754754, -1.695669], &[14.7857155940053, 33.24780965657282, 25.547721767487396]),
    (10, &[0.677443, 0.062137, 1.266519, -1.42092, -0.582787, -1.400183, -1.996162, -1.286249, 0.654234, -0.294713], &[18.74179554224575, 10.348613096757285, 15.238095550386548]),
    (10, &[0.688769, 0.614838, -1.348232, 1.395923, -1.530932, 0.977436, 1.285466, -1.539022, 1.555476, -0.868182, 0.008091, 0.272804, 1.171965, -0.750498, 0.33448], &[23.85738175536656, 12.195463526512686, 14.132387348369246]),
    (10, &[0.098535, 0.126334, 1.236161, -1.900717, -0.112692, 0.165937, 1.986848, 0.259725, 0.346585, 0.943439, -0.228653, -0.959414, -0.975224, 0.973143, -0.530233], &[21.984732881626112, 5.323659124926398, 5.330069515674668]),
];

#[test]
fn matches_independent_transcription() {
    for (id, x, want) in CASES {
        let got = Uf::new(*id, x.len()).unwrap().evaluate(x);
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want.iter()) {
            assert!(
                (g - w).abs() <= 1e-12 * w.abs().max(1.0),
                "UF{id} n={}: {g} vs {w}",
                x.len()
            );
        }
    }
}

#[test]
fn case_points_lie_in_the_box() {
    for (id, x, _) in CASES {
        let uf = Uf::new(*id, x.len()).unwrap();
        let (l, u) = (uf.lower(), uf.upper());
        assert!(x.iter().enumerate().all(|(i, v)| l[i] <= *v && *v <= u[i]));
    }
}

#[test]
fn uf1_pareto_set_traces_the_concave_front() {
    for n in [10, 30] {
        let uf = Uf::new(1, n).unwrap();
        for k in 0..=20 {
            let x1 = k as f64 / 20.0;
            let mut x = vec![x1; n];
            for j in 2..=n {
                x[j - 1] = (6.0 * PI * x1 + j as f64 * PI / n as f64).sin();
            }
            let f = uf.evaluate(&x);
            assert!((f[0] - x1).abs() < 1e-15);
            assert!((f[1] - (1.0 - f[0].sqrt())).abs() < 1e-12);
        }
    }
}

#[test]
fn objective_counts() {
    for id in 1..=10u8 {
        let want = if id >= 8 { 3 } else { 2 };
        assert_eq!(Uf::new(id, 10).unwrap().evaluate(&[0.5; 10]).len(), want);
    }
}
