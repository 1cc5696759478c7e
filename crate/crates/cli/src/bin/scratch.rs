use fl_lab::config::RunConfig;
use fl_lab::suites::props;
use std::time::Instant;

fn main() {
    for p in [7u64, 13] {
        let c = RunConfig { p, ..RunConfig::default() };
        let ctx = c.ctx(fl_core::Mu3Ident::Rho).unwrap();
        let t = Instant::now();
        let r = props::charsum_suite(&c, &ctx);
        let fails = r.iter().filter(|x| x.pass == Some(false)).count();
        println!("charsum p={p}: {} records ({fails} fail) in {:?}", r.len(), t.elapsed());
    }
}
